#ifndef RESIL_VALUE_HPP_
#define RESIL_VALUE_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace resil {

// A communicable value: an integer atom, a named constant from the declared
// domain, or a tuple of values.
struct Value {
  enum class Kind { Int, Name, Tuple };
  Kind kind = Kind::Tuple;
  long long num = 0;
  std::string name;
  std::vector<Value> items;

  static Value of_int(long long n) {
    Value v;
    v.kind = Kind::Int;
    v.num = n;
    return v;
  }
  static Value of_name(std::string s) {
    Value v;
    v.kind = Kind::Name;
    v.name = std::move(s);
    return v;
  }
  static Value unit() { return Value{}; }  // empty tuple
  static Value tuple(std::vector<Value> xs) {
    Value v;
    v.items = std::move(xs);
    return v;
  }

  bool is_unit() const { return kind == Kind::Tuple && items.empty(); }

  std::string str() const;
  int cmp(const Value& o) const;
  bool operator==(const Value& o) const { return cmp(o) == 0; }
  bool operator!=(const Value& o) const { return cmp(o) != 0; }
  bool operator<(const Value& o) const { return cmp(o) < 0; }
};

// Total count of floored subtractions observed while evaluating expressions
// (monus semantics). Reported by the CLI; reset per run when required.
long long monus_floor_events();
void reset_monus_floor_events();
void note_monus_floor();

}  // namespace resil

#endif  // RESIL_VALUE_HPP_
