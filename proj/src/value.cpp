#include "resil/value.hpp"

namespace resil {

namespace {
long long g_monus_floors = 0;
}

long long monus_floor_events() { return g_monus_floors; }
void reset_monus_floor_events() { g_monus_floors = 0; }
void note_monus_floor() { ++g_monus_floors; }

std::string Value::str() const {
  switch (kind) {
    case Kind::Int:
      return std::to_string(num);
    case Kind::Name:
      return name;
    case Kind::Tuple: {
      std::string s = "(";
      for (size_t i = 0; i < items.size(); ++i) {
        if (i) s += ",";
        s += items[i].str();
      }
      s += ")";
      return s;
    }
  }
  return "?";
}

int Value::cmp(const Value& o) const {
  if (kind != o.kind) return kind < o.kind ? -1 : 1;
  switch (kind) {
    case Kind::Int:
      if (num != o.num) return num < o.num ? -1 : 1;
      return 0;
    case Kind::Name:
      if (name != o.name) return name < o.name ? -1 : 1;
      return 0;
    case Kind::Tuple: {
      if (items.size() != o.items.size())
        return items.size() < o.items.size() ? -1 : 1;
      for (size_t i = 0; i < items.size(); ++i) {
        int c = items[i].cmp(o.items[i]);
        if (c) return c;
      }
      return 0;
    }
  }
  return 0;
}

}  // namespace resil
