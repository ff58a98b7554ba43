#ifndef RESIL_MODEL_HPP_
#define RESIL_MODEL_HPP_

#include <map>
#include <set>
#include <string>
#include <vector>

#include "resil/term.hpp"

namespace resil {

struct AdversaryDecl {
  std::string name;
  std::string kind;  // benign | step_counter | fail_stop | channel_omission |
                     // channel_reorder_omission
  std::map<std::string, std::string> kv;
  int line = 0;
};

struct CheckDecl {
  std::string name;
  std::string kind;  // resilience | bisim | barbs | err | reach | cover | subcover
  std::map<std::string, std::string> kv;
  int line = 0;
};

// A parsed and validated model file.
struct Model {
  std::vector<Value> domain;
  std::set<std::string> channels;
  std::set<std::string> mediated;  // channels some declared adversary mediates
  std::set<std::string> locations;
  std::map<std::string, ProcDef> defs;
  std::map<std::string, Proc> systems;
  std::map<std::string, Proc> contexts;
  std::map<std::string, AdversaryDecl> adversaries;
  std::vector<CheckDecl> checks;
  std::string generator;  // provenance pragma: generator name
  std::map<std::string, std::string> generator_kv;

  bool value_in_domain(const Value& v) const;
  bool is_domain_atom(const std::string& name) const;
  const ProcDef& def(const std::string& name) const;
  Proc system(const std::string& name) const;
  Proc context(const std::string& name) const;
  const AdversaryDecl& adversary(const std::string& name) const;
};

}  // namespace resil

#endif  // RESIL_MODEL_HPP_
