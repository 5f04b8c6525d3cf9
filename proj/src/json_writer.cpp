#include "fpk/json_writer.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace fpk {

Json Json::boolean(bool b) {
    Json j;
    j.kind_ = Kind::boolean;
    j.bool_ = b;
    return j;
}

Json Json::integer(std::int64_t v) {
    Json j;
    j.kind_ = Kind::integer;
    j.int_ = v;
    return j;
}

Json Json::number(double v) {
    Json j;
    j.kind_ = Kind::number;
    j.num_ = v;
    return j;
}

Json Json::string(std::string s) {
    Json j;
    j.kind_ = Kind::string;
    j.str_ = std::move(s);
    return j;
}

Json Json::array() {
    Json j;
    j.kind_ = Kind::array;
    return j;
}

Json Json::object() {
    Json j;
    j.kind_ = Kind::object;
    return j;
}

void Json::push(Json element) {
    if (kind_ != Kind::array) throw std::logic_error("Json::push on non-array");
    items_.push_back(std::move(element));
}

void Json::set(const std::string& key, Json value) {
    if (kind_ != Kind::object) throw std::logic_error("Json::set on non-object");
    for (auto& kv : members_)
        if (kv.first == key) {
            kv.second = std::move(value);
            return;
        }
    members_.emplace_back(key, std::move(value));
}

bool Json::scalar() const { return kind_ != Kind::array && kind_ != Kind::object; }

namespace {

void write_escaped(std::string& out, const std::string& s) {
    out += '"';
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    out += '"';
}

void write_number(std::string& out, double v) {
    if (!std::isfinite(v)) {
        out += "null";
        return;
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += buf;
}

}  // namespace

void Json::write(std::string& out, int indent, int depth) const {
    switch (kind_) {
        case Kind::null: out += "null"; return;
        case Kind::boolean: out += bool_ ? "true" : "false"; return;
        case Kind::integer: out += std::to_string(int_); return;
        case Kind::number: write_number(out, num_); return;
        case Kind::string: write_escaped(out, str_); return;
        case Kind::array: {
            if (items_.empty()) {
                out += "[]";
                return;
            }
            bool flat = true;
            for (const auto& it : items_) flat = flat && it.scalar();
            if (flat) {
                out += '[';
                for (std::size_t i = 0; i < items_.size(); ++i) {
                    if (i) out += ", ";
                    items_[i].write(out, indent, depth + 1);
                }
                out += ']';
                return;
            }
            out += "[\n";
            const std::string pad((depth + 1) * indent, ' ');
            for (std::size_t i = 0; i < items_.size(); ++i) {
                out += pad;
                items_[i].write(out, indent, depth + 1);
                if (i + 1 < items_.size()) out += ',';
                out += '\n';
            }
            out += std::string(depth * indent, ' ');
            out += ']';
            return;
        }
        case Kind::object: {
            if (members_.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            const std::string pad((depth + 1) * indent, ' ');
            for (std::size_t i = 0; i < members_.size(); ++i) {
                out += pad;
                write_escaped(out, members_[i].first);
                out += ": ";
                members_[i].second.write(out, indent, depth + 1);
                if (i + 1 < members_.size()) out += ',';
                out += '\n';
            }
            out += std::string(depth * indent, ' ');
            out += '}';
            return;
        }
    }
}

std::string Json::dump(int indent) const {
    std::string out;
    write(out, indent, 0);
    return out;
}

}  // namespace fpk
