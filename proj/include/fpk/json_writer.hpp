#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace fpk {

// Minimal JSON document builder with insertion-ordered object keys and a
// fixed shortest-round-trip float encoding, so identical runs serialize to
// identical bytes.
class Json {
  public:
    static Json boolean(bool b);
    static Json integer(std::int64_t v);
    static Json number(double v);
    static Json string(std::string s);
    static Json array();
    static Json object();

    void push(Json element);                      // array append
    void set(const std::string& key, Json value); // object insert (ordered)

    bool is_array() const { return kind_ == Kind::array; }
    bool is_object() const { return kind_ == Kind::object; }

    std::string dump(int indent = 2) const;

  private:
    enum class Kind { null, boolean, integer, number, string, array, object };

    Kind kind_ = Kind::null;
    bool bool_ = false;
    std::int64_t int_ = 0;
    double num_ = 0.0;
    std::string str_;
    std::vector<Json> items_;
    std::vector<std::pair<std::string, Json>> members_;

    bool scalar() const;
    void write(std::string& out, int indent, int depth) const;
};

}  // namespace fpk
