#include "catprob/commands.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "catprob/error.hpp"
#include "catprob/sampling.hpp"

namespace catprob {
namespace {

using Flags = std::map<std::string, std::string>;

constexpr std::size_t kStochSamples = 200;

const std::string& need_flag(const Flags& flags, const char* name, const char* usage) {
  auto it = flags.find(name);
  if (it == flags.end() || it->second.empty()) {
    throw Error("ParseError", std::string("missing --") + name + "; usage: " + usage);
  }
  return it->second;
}

bool has_flag(const Flags& flags, const char* name) { return flags.count(name) != 0; }

std::uint64_t parse_seed(const Flags& flags);

void check_flags(const Flags& flags, const std::vector<std::string>& allowed,
                 const char* usage) {
  parse_seed(flags);
  for (const auto& [name, value] : flags) {
    if (name == "seed") continue;
    bool ok = false;
    for (const auto& a : allowed) {
      if (name == a) {
        ok = true;
        break;
      }
    }
    if (!ok) {
      throw Error("ParseError", "unknown flag --" + name + "; usage: " + std::string(usage));
    }
  }
}

std::uint64_t parse_seed(const Flags& flags) {
  auto it = flags.find("seed");
  if (it == flags.end()) return 0;
  const std::string& text = it->second;
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
    throw Error("ParseError", "bad seed '" + text + "'");
  }
  try {
    return std::stoull(text);
  } catch (const std::out_of_range&) {
    throw Error("ParseError", "seed '" + text + "' does not fit in 64 bits");
  }
}

std::string law_line(const char* law, const LawCheck& check) {
  std::string out = std::string(law) + (check.ok() ? " PASS (" : " FAIL (") +
                    std::to_string(check.checked) + " checks)\n";
  if (!check.ok()) {
    out += "  failed " + std::to_string(check.failed) +
           "; counterexample: " + check.first_counterexample + "\n";
  }
  return out;
}

void append_report(std::string& out, const std::string& kind, const std::string& name,
                   const AuditReport& report, int& exit_code) {
  if (report.ok()) {
    out += kind + " " + name + " ok (" + std::to_string(report.checked) + " checks)\n";
    return;
  }
  out += kind + " " + name + " INVALID (" + std::to_string(report.violations.size()) +
         " violations)\n";
  for (const auto& v : report.violations) {
    out += "  " + v.kind + ": " + v.witness + "\n";
  }
  exit_code = 1;
}

CommandResult cmd_check(const Workspace& ws) {
  std::string out;
  int exit_code = 0;
  for (const auto& d : ws.order) {
    if (d.kind == "category") {
      append_report(out, d.kind, d.name, validate_category(ws.categories.at(d.name)),
                    exit_code);
    } else if (d.kind == "functor") {
      append_report(out, d.kind, d.name, check_functor(ws.functors.at(d.name)), exit_code);
    } else if (d.kind == "nattrans") {
      append_report(out, d.kind, d.name, check_nat_trans(ws.nattranses.at(d.name)),
                    exit_code);
    } else {
      out += d.kind + " " + d.name + " ok\n";
    }
  }
  return {out, exit_code};
}

CommandResult cmd_compose(const Workspace& ws, const Flags& flags) {
  const char* usage = "compose --left <kernel> --right <kernel>";
  check_flags(flags, {"left", "right"}, usage);
  const StochKernel& left = ws.kernel(need_flag(flags, "left", usage));
  const StochKernel& right = ws.kernel(need_flag(flags, "right", usage));
  return {print_kernel(compose_kernels(left, right), "result"), 0};
}

CommandResult cmd_pushforward(const Workspace& ws, const Flags& flags) {
  const char* usage = "pushforward --measure <measure> --map <map>";
  check_flags(flags, {"measure", "map"}, usage);
  const RationalMeasure& m = ws.measure(need_flag(flags, "measure", usage));
  const MeasurableMap& f = ws.map(need_flag(flags, "map", usage));
  return {print_measure(pushforward(m, f), "result"), 0};
}

CommandResult cmd_bind(const Workspace& ws, const Flags& flags) {
  const char* usage = "bind --measure <measure> --kernel <kernel>";
  check_flags(flags, {"measure", "kernel"}, usage);
  const RationalMeasure& m = ws.measure(need_flag(flags, "measure", usage));
  const StochKernel& t = ws.kernel(need_flag(flags, "kernel", usage));
  return {print_measure(kleisli_apply(t, m), "result"), 0};
}

CommandResult cmd_integrate(const Workspace& ws, const Flags& flags) {
  const char* usage = "integrate --obs <observable> --measure <measure>";
  check_flags(flags, {"obs", "measure"}, usage);
  const RealObservable& obs = ws.observable(need_flag(flags, "obs", usage));
  const RationalMeasure& m = ws.measure(need_flag(flags, "measure", usage));
  return {format_rational(integrate(obs, m)) + "\n", 0};
}

CommandResult cmd_bounded(const Workspace& ws, const Flags& flags) {
  const char* usage = "bounded --map <map> --dom <measure> --cod <measure>";
  check_flags(flags, {"map", "dom", "cod"}, usage);
  const MeasurableMap& f = ws.map(need_flag(flags, "map", usage));
  const RationalMeasure& dm = ws.measure(need_flag(flags, "dom", usage));
  const RationalMeasure& cm = ws.measure(need_flag(flags, "cod", usage));
  const auto bound = bounded_constant(f, dm, cm);
  if (!bound) return {"UNBOUNDED\n", 1};
  return {"M = " + format_rational(*bound) + "\n", 0};
}

CommandResult cmd_normalize(const Workspace& ws, const Flags& flags) {
  const char* usage = "normalize --measure <measure>";
  check_flags(flags, {"measure"}, usage);
  const RationalMeasure& m = ws.measure(need_flag(flags, "measure", usage));
  return {print_measure(normalize(m), "result"), 0};
}

CommandResult cmd_chi(const Workspace& ws, const Flags& flags) {
  const char* usage = "chi --left <chi> --right <chi>";
  check_flags(flags, {"left", "right"}, usage);
  const ChiObject& left = ws.chi(need_flag(flags, "left", usage));
  const ChiObject& right = ws.chi(need_flag(flags, "right", usage));
  return {chi_leq(left, right) ? "true\n" : "false\n", 0};
}

CommandResult cmd_product(const Workspace& ws, const Flags& flags) {
  const char* usage =
      "product --left <space> --right <space> [--universal --z <space> --f <map> --g <map>]";
  check_flags(flags, {"left", "right", "universal", "z", "f", "g"}, usage);
  const FinSpace& x = ws.space(need_flag(flags, "left", usage));
  const FinSpace& y = ws.space(need_flag(flags, "right", usage));
  std::string out = print_space(product_space(x, y), "result");
  out += print_map(projection_first(x, y), "p1");
  out += print_map(projection_second(x, y), "p2");
  if (!has_flag(flags, "universal")) return {out, 0};

  const FinSpace& z = ws.space(need_flag(flags, "z", usage));
  const MeasurableMap& f = ws.map(need_flag(flags, "f", usage));
  const MeasurableMap& g = ws.map(need_flag(flags, "g", usage));
  const UniversalReport report = check_product_universal(z, x, y, f, g);
  out += "candidates = " + std::to_string(report.candidate_count) + "\n";
  out += "measurable = " + std::to_string(report.measurable_count) + "\n";
  out += "mediating = " + std::to_string(report.mediating_count) + "\n";
  out += std::string("witness = ") +
         (report.mediating_count == 0 ? "none"
                                      : (report.witness_is_pairing ? "pairing" : "other")) +
         "\n";
  out += std::string("universal = ") + (report.holds() ? "yes" : "no") + "\n";
  return {out, report.holds() ? 0 : 1};
}

CommandResult cmd_laws_stoch(const Flags& flags) {
  check_flags(flags, {}, "laws stoch [--seed <u64>]");
  const StochLawReport report = run_stoch_law_suite(parse_seed(flags), kStochSamples);
  std::string out = law_line("assoc", report.assoc);
  out += law_line("left-id", report.left_id);
  out += law_line("right-id", report.right_id);
  return {out, report.all_ok() ? 0 : 1};
}

CommandResult cmd_laws_monad(const Workspace& ws, const Flags& flags) {
  check_flags(flags, {}, "laws monad");
  std::vector<std::string> base_order;
  std::map<std::string, std::vector<MixMixMeasure>> by_base;
  for (const auto& d : ws.order) {
    if (d.kind != "mix2") continue;
    const MixMixMeasure& mm = ws.mix2s.at(d.name);
    const std::string& base = mm.base().name();
    if (!by_base.count(base)) base_order.push_back(base);
    by_base[base].push_back(mm);
  }
  if (base_order.empty()) {
    throw Error("ResolveError", "laws monad needs at least one mix2 declaration");
  }
  MonadLawReport total;
  for (const auto& base : base_order) {
    const FinSpace& space = ws.space(base);
    const MonadLawReport one = check_monad_laws(space, by_base[base], space.points());
    total.left_unit.absorb(one.left_unit);
    total.right_unit.absorb(one.right_unit);
    total.assoc.absorb(one.assoc);
  }
  std::string out = law_line("left-unit", total.left_unit);
  out += law_line("right-unit", total.right_unit);
  out += law_line("assoc", total.assoc);
  return {out, total.all_ok() ? 0 : 1};
}

CommandResult cmd_laws_naturality(const Workspace& ws, const Flags& flags) {
  const char* usage = "laws naturality --map <map>";
  check_flags(flags, {"map"}, usage);
  const MeasurableMap& f = ws.map(need_flag(flags, "map", usage));
  const LawCheck unit = check_unit_naturality(f);
  std::vector<MixMeasure> mixes;
  for (const auto& d : ws.order) {
    if (d.kind != "mix") continue;
    const MixMeasure& mix = ws.mixes.at(d.name);
    if (mix.base() == f.dom()) mixes.push_back(mix);
  }
  const LawCheck mult = check_mult_naturality(f, mixes);
  std::string out = law_line("unit-naturality", unit);
  out += law_line("mult-naturality", mult);
  return {out, unit.ok() && mult.ok() ? 0 : 1};
}

CommandResult cmd_opposite(const Workspace& ws, const Flags& flags) {
  const char* usage = "opposite --cat <category>";
  check_flags(flags, {"cat"}, usage);
  const FinCategory& cat = ws.category(need_flag(flags, "cat", usage));
  return {print_category(opposite_category(cat), "result"), 0};
}

CommandResult cmd_functor_check(const Workspace& ws, const Flags& flags) {
  check_flags(flags, {}, "functor-check");
  std::string out;
  int exit_code = 0;
  bool any = false;
  for (const auto& d : ws.order) {
    if (d.kind != "functor") continue;
    any = true;
    append_report(out, "functor", d.name, check_functor(ws.functors.at(d.name)), exit_code);
  }
  if (!any) out = "no functors declared\n";
  return {out, exit_code};
}

CommandResult cmd_nattrans_check(const Workspace& ws, const Flags& flags) {
  check_flags(flags, {}, "nattrans-check");
  std::string out;
  int exit_code = 0;
  bool any = false;
  for (const auto& d : ws.order) {
    if (d.kind != "nattrans") continue;
    any = true;
    append_report(out, "nattrans", d.name, check_nat_trans(ws.nattranses.at(d.name)),
                  exit_code);
  }
  if (!any) out = "no natural transformations declared\n";
  return {out, exit_code};
}

CommandResult dispatch(const Workspace& ws, const std::string& command, const Flags& flags) {
  if (command == "check") {
    check_flags(flags, {}, "check");
    return cmd_check(ws);
  }
  if (command == "compose") return cmd_compose(ws, flags);
  if (command == "pushforward") return cmd_pushforward(ws, flags);
  if (command == "bind") return cmd_bind(ws, flags);
  if (command == "integrate") return cmd_integrate(ws, flags);
  if (command == "bounded") return cmd_bounded(ws, flags);
  if (command == "normalize") return cmd_normalize(ws, flags);
  if (command == "chi") return cmd_chi(ws, flags);
  if (command == "product") return cmd_product(ws, flags);
  if (command == "laws stoch") return cmd_laws_stoch(flags);
  if (command == "laws monad") return cmd_laws_monad(ws, flags);
  if (command == "laws naturality") return cmd_laws_naturality(ws, flags);
  if (command == "opposite") return cmd_opposite(ws, flags);
  if (command == "functor-check") return cmd_functor_check(ws, flags);
  if (command == "nattrans-check") return cmd_nattrans_check(ws, flags);
  throw Error("UnknownCommand", "unknown command '" + command + "'");
}

}  // namespace

CommandResult run_command(const Workspace& ws, const std::string& command,
                          const std::map<std::string, std::string>& flags) {
  try {
    return dispatch(ws, command, flags);
  } catch (const Error& e) {
    return {"error[" + e.code() + "]: " + e.message() + "\n", 2};
  }
}

}  // namespace catprob
