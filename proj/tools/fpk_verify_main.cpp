#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "fpk/suite.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    try {
        const fpk::SuiteConfig cfg = fpk::parse_config(args);
        if (cfg.sweep) return fpk::run_sweep(cfg, std::cout);
        const fpk::SuiteReport rep = fpk::run_suite(cfg);
        if (cfg.format == fpk::OutputFormat::json)
            std::cout << fpk::report_to_json(rep).dump() << "\n";
        else
            std::cout << fpk::report_to_text(rep);
        return rep.pass ? 0 : 1;
    } catch (const fpk::HelpRequested& h) {
        std::cout << h.text;
        return 0;
    } catch (const fpk::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n"
                  << "run with --help for flag descriptions\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
