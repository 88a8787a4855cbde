#include "modlog/module.hpp"

#include "modlog/generic_module.hpp"
#include "modlog/stc_module.hpp"
#include "modlog/tc_module.hpp"

namespace modlog {

std::unique_ptr<ModulePlugin> make_module(const ModuleSpec& spec, const Program& program,
                                          InstanceCounter* counter) {
  switch (spec.kind) {
    case ModuleKind::Tc:
      return std::make_unique<TcModule>(spec.predicate, counter);
    case ModuleKind::Stc:
      return std::make_unique<StcModule>(spec.predicate, counter);
    case ModuleKind::Generic:
      break;
  }
  std::vector<Rule> rules;
  rules.reserve(spec.rules.size());
  for (std::size_t i : spec.rules) rules.push_back(program.rules[i]);
  return std::make_unique<GenericModule>(std::move(rules), counter);
}

}  // namespace modlog
