#include "resil/model.hpp"

#include "resil/diag.hpp"

namespace resil {

bool Model::value_in_domain(const Value& v) const {
  if (v.kind == Value::Kind::Tuple) {
    for (const auto& it : v.items)
      if (!value_in_domain(it)) return false;
    return true;
  }
  for (const auto& d : domain)
    if (d == v) return true;
  return false;
}

bool Model::is_domain_atom(const std::string& name) const {
  for (const auto& d : domain)
    if (d.kind == Value::Kind::Name && d.name == name) return true;
  return false;
}

const ProcDef& Model::def(const std::string& name) const {
  auto it = defs.find(name);
  if (it == defs.end()) throw ModelError("UndeclaredName", "def " + name);
  return it->second;
}

Proc Model::system(const std::string& name) const {
  auto it = systems.find(name);
  if (it == systems.end()) throw ModelError("UndeclaredName", "system " + name);
  return it->second;
}

Proc Model::context(const std::string& name) const {
  auto it = contexts.find(name);
  if (it == contexts.end())
    throw ModelError("UndeclaredName", "context " + name);
  return it->second;
}

const AdversaryDecl& Model::adversary(const std::string& name) const {
  auto it = adversaries.find(name);
  if (it == adversaries.end())
    throw ModelError("UndeclaredName", "adversary " + name);
  return it->second;
}

}  // namespace resil
