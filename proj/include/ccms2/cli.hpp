#pragma once

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "error.hpp"
#include "ineq.hpp"
#include "instance.hpp"
#include "io.hpp"
#include "lp_format.hpp"
#include "separation.hpp"
#include "solver.hpp"
#include "verify.hpp"

namespace ccms2 {
namespace clidetail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::parse, path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::parse, path + ": cannot open file for writing");
  out << text;
  out.flush();
  if (!out) throw Error(ErrorKind::parse, path + ": write failed");
}

inline std::vector<int> parse_index_list(const std::string& s, const char* field) {
  std::vector<int> out;
  if (s.empty()) return out;
  for (const auto& tok : detail::split(s, ',')) {
    try {
      std::size_t pos = 0;
      int v = std::stoi(tok, &pos);
      if (pos != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      throw Error(ErrorKind::parse, std::string(field) + ": bad index '" + tok + "'");
    }
  }
  return out;
}

inline void require_boxed(const Point& p) {
  auto v = p.to_vector();
  for (std::size_t j = 0; j < v.size(); ++j)
    if (v[j] < 0 || v[j] > 1)
      throw Error(ErrorKind::bad_params, "point: coordinate " + std::to_string(j + 1) + " outside [0,1]");
}

enum class Fmt { human, machine, lp };

// ---------------------------------------------------------------------------
// Report rendering

inline std::string cuts_summary(const std::map<std::string, long long>& by_family) {
  std::string s;
  for (const auto& [fam, cnt] : by_family) {
    if (!s.empty()) s += ", ";
    s += fam + " " + std::to_string(cnt);
  }
  return s;
}

inline std::string solve_report_machine(const SolveReport& rep, const XSolution* x, bool trace) {
  std::ostringstream os;
  os << machine_header << "\n";
  os << "status " << solve_status_name(rep.status) << "\n";
  os << "value " << rat_to_string(rep.value) << "\n";
  os << "offset " << rat_to_string(rep.offset) << "\n";
  os << "rounds " << rep.rounds << "\n";
  os << "lp_calls " << rep.lp_calls << "\n";
  os << "lp_pivots " << rep.lp_pivots << "\n";
  os << "cuts_total " << rep.cuts_total << "\n";
  for (const auto& [fam, cnt] : rep.cuts_by_family) os << "cuts " << fam << " " << cnt << "\n";
  if (trace)
    for (const auto& r : rep.trail)
      os << "round " << r.round << " " << rat_to_string(r.lp_value) << " " << r.cuts << "\n";
  if (rep.status != SolveStatus::infeasible) os << "point " << point_to_line(rep.point) << "\n";
  if (x) {
    os << "x " << rat_vector_to_line(x->x) << "\n";
    os << "monomials " << rat_to_string(x->monomials[0]) << " " << rat_to_string(x->monomials[1]) << "\n";
  }
  return os.str();
}

inline std::string solve_report_human(const SolveReport& rep, const XSolution* x, bool trace) {
  std::ostringstream os;
  os << "status: " << solve_status_name(rep.status) << "\n";
  if (rep.status == SolveStatus::round_cap)
    os << "bound: " << rat_to_string(rep.value) << " (relaxation value at the round cap)\n";
  else
    os << "value: " << rat_to_string(rep.value) << "\n";
  if (rep.offset != 0) os << "offset: " << rat_to_string(rep.offset) << "\n";
  os << "rounds: " << rep.rounds << "\n";
  os << "lp calls: " << rep.lp_calls << ", pivots: " << rep.lp_pivots << "\n";
  os << "cuts: " << rep.cuts_total;
  if (rep.cuts_total > 0) os << " (" << cuts_summary(rep.cuts_by_family) << ")";
  os << "\n";
  if (trace)
    for (const auto& r : rep.trail)
      os << "round " << r.round << ": value " << rat_to_string(r.lp_value) << ", cuts " << r.cuts << "\n";
  if (rep.status != SolveStatus::infeasible) os << "point: " << point_to_line(rep.point) << "\n";
  if (x) {
    os << "x: " << rat_vector_to_line(x->x) << "\n";
    os << "monomials: " << rat_to_string(x->monomials[0]) << " " << rat_to_string(x->monomials[1]) << "\n";
  }
  return os.str();
}

inline std::string verify_reports_machine(const std::vector<VerifyReport>& reports) {
  std::ostringstream os;
  os << machine_header << "\n";
  bool all = true;
  for (const auto& rep : reports)
    for (const auto& c : rep.checks) {
      os << "check;" << rep.subject << ";" << c.name << ";" << (c.pass ? "pass" : "fail") << ";" << c.detail << "\n";
      all = all && c.pass;
    }
  os << "result " << (all ? "pass" : "fail") << "\n";
  return os.str();
}

inline std::string verify_reports_human(const std::vector<VerifyReport>& reports) {
  std::ostringstream os;
  bool all = true;
  for (const auto& rep : reports) {
    os << rep.to_text();
    all = all && rep.all_pass();
  }
  os << "result: " << (all ? "pass" : "fail") << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Subcommand bodies. Each returns the process exit code.

struct CommonArgs {
  std::string instance_path;
  Fmt format = Fmt::human;
};

inline int run_enumerate(const CommonArgs& args, std::ostream& out) {
  LoadedInstance li = instance_from_text(read_file(args.instance_path));
  if (args.format == Fmt::lp) throw Error(ErrorKind::bad_params, "format: enumerate supports human and machine");
  if (args.format == Fmt::machine) out << machine_header << "\n";
  for (const auto& bp : enumerate_points(li.inst)) out << point_to_line(bp.to_point(li.inst.n)) << "\n";
  return 0;
}

struct GenArgs : CommonArgs {
  bool all_q = false;
  std::string family;
  std::string q;
  int i = 0, k = 0;
};

inline int run_gen(const GenArgs& args, std::ostream& out) {
  LoadedInstance li = instance_from_text(read_file(args.instance_path));
  const Instance& inst = li.inst;

  std::vector<LinIneq> rows;
  if (!args.family.empty()) {
    if (args.all_q) throw Error(ErrorKind::bad_params, "family: cannot combine --family with --all-q");
    auto fam = family_from_name(args.family);
    if (!fam) throw Error(ErrorKind::parse, "family: unknown name '" + args.family + "'");
    FamilyParams p;
    p.i = args.i;
    p.k = args.k;
    if (p.i == 0 && p.k == 0) {
      // The two-parameter families default to their first column.
      if (*fam == Family::U3 || *fam == Family::L3) { p.i = 1; p.k = 2; }
      if (*fam == Family::U4 || *fam == Family::L4 || *fam == Family::SL5) p.i = 1;
    } else if (p.k == 0 && (*fam == Family::U3 || *fam == Family::L3)) {
      p.k = 3 - p.i;
    }
    check_family_params(*fam, p);
    Mask q = mask_from_indices(parse_index_list(args.q, "q"), inst.n, "q");
    auto row = family_ineq(inst, *fam, p, q);
    if (!row)
      throw Error(ErrorKind::bad_params, "q: side condition of " + args.family + " rejects Q=" + mask_to_string(q));
    rows.push_back(*row);
  } else if (args.all_q) {
    rows = all_family_ineqs(inst);
  } else {
    rows = base_system(inst);
  }

  switch (args.format) {
    case Fmt::machine:
      out << machine_header << "\n";
      for (const auto& r : rows) out << row_to_line(r) << "\n";
      break;
    case Fmt::human:
      for (const auto& r : rows) out << row_to_text(r) << "\n";
      break;
    case Fmt::lp:
      out << system_to_lp_text(rows, inst.n);
      break;
  }
  return 0;
}

struct SeparateArgs : CommonArgs {
  std::string point_path;
};

inline int run_separate(const SeparateArgs& args, std::ostream& out) {
  LoadedInstance li = instance_from_text(read_file(args.instance_path));
  if (args.format == Fmt::lp) throw Error(ErrorKind::bad_params, "format: separate supports human and machine");
  Point p = point_from_text(read_file(args.point_path), li.inst.n);
  require_boxed(p);
  auto cuts = separate_all(li.inst, p);
  if (args.format == Fmt::machine) {
    out << machine_header << "\n";
    for (const auto& c : cuts) out << cut_to_line(c.ineq, c.violation) << "\n";
  } else {
    if (cuts.empty()) out << "no violated rows\n";
    for (const auto& c : cuts) out << row_to_text(c.ineq) << "  violated by " << rat_to_string(c.violation) << "\n";
  }
  return 0;
}

struct SolveArgs : CommonArgs {
  std::string objective_path;
  std::string sense = "max";
  bool sense_explicit = false;
  int max_rounds = 10000;
  bool trace = false;
  std::string emit_lp_path;
};

inline int run_solve(const SolveArgs& args, std::ostream& out) {
  LoadedInstance li = instance_from_text(read_file(args.instance_path));
  if (args.format == Fmt::lp)
    throw Error(ErrorKind::bad_params, "format: solve supports human and machine; use --emit-lp for the model");

  SolveOptions opt;
  opt.max_rounds = args.max_rounds;

  SolveReport rep;
  std::optional<XSolution> xsol;
  std::vector<Rat> lp_objective;
  Sense lp_sense = Sense::maximize;

  if (li.x_space()) {
    if (!args.objective_path.empty())
      throw Error(ErrorKind::bad_params, "objective: x-space instances carry their objective in the instance file");
    XPolyProblem p = *li.xprob;
    if (args.sense_explicit) p.sense = (args.sense == "min") ? Sense::minimize : Sense::maximize;
    XSolveReport xr = solve_x_problem(p, opt);
    rep = std::move(xr.report);
    if (rep.status == SolveStatus::optimal) xsol = std::move(xr.x);
    XTransform t = from_x_space(p);
    lp_objective = t.objective;
    lp_sense = t.z_sense;
  } else {
    if (args.objective_path.empty())
      throw Error(ErrorKind::bad_params, "objective: required for z-space instances");
    auto c = rat_vector_from_text(read_file(args.objective_path), "objective");
    if (int(c.size()) != li.inst.dim())
      throw Error(ErrorKind::parse, "objective: expected " + std::to_string(li.inst.dim()) + " coefficients, got " +
                                        std::to_string(c.size()));
    lp_sense = (args.sense == "min") ? Sense::minimize : Sense::maximize;
    lp_objective = c;
    rep = optimize(li.inst, c, lp_sense, opt);
  }

  if (!args.emit_lp_path.empty()) {
    LPModel m = lp_model(li.inst.dim(), lp_sense);
    m.objective = lp_objective;
    for (int j = 0; j < m.num_vars; ++j) m.lo[std::size_t(j)] = Rat(0);
    for (const auto& r : rep.active_rows) {
      std::vector<Rat> a(r.a.begin(), r.a.end());
      m.add_row(std::move(a), Rel::le, Rat(r.rhs));
    }
    write_file(args.emit_lp_path, lp_to_text(m, lp_var_names(li.inst.n)));
  }

  const XSolution* xp = xsol ? &*xsol : nullptr;
  out << (args.format == Fmt::machine ? solve_report_machine(rep, xp, args.trace)
                                      : solve_report_human(rep, xp, args.trace));
  switch (rep.status) {
    case SolveStatus::optimal: return 0;
    case SolveStatus::infeasible: return 2;
    case SolveStatus::round_cap: return 3;
  }
  return 1;
}

struct VerifyArgs : CommonArgs {
  std::string check = "suite";
  int trials = 100;
  std::uint64_t seed = 1;
};

inline void run_checks_on(const Instance& inst, const std::string& check, int trials, std::uint64_t seed,
                          std::vector<VerifyReport>& reports) {
  bool suite = (check == "suite");
  if (check == "validity" || suite) reports.push_back(check_validity(inst, all_family_ineqs(inst)));
  if (check == "hull" || suite) reports.push_back(hull_equality_check(inst, trials, seed));
  if (check == "affine" || suite) reports.push_back(affine_hull_report(inst));
  if (check == "face" || suite) reports.push_back(face_check_augmented(inst, trials, seed));
  if (check == "nested") reports.push_back(nested_consistency(inst, trials, seed)); // rejects non-nested input
  else if (suite && inst.nested) reports.push_back(nested_consistency(inst, trials, seed));
}

inline int run_verify(const VerifyArgs& args, std::ostream& out) {
  std::vector<VerifyReport> reports;
  if (!args.instance_path.empty()) {
    LoadedInstance li = instance_from_text(read_file(args.instance_path));
    run_checks_on(li.inst, args.check, args.trials, args.seed, reports);
  } else {
    // No instance file: sweep the built-in structural matrix.
    for (const auto& entry : matrix_instances()) {
      if (args.check == "nested" && !entry.inst.nested) continue;
      run_checks_on(entry.inst, args.check, args.trials, args.seed, reports);
    }
  }

  bool all = true;
  for (const auto& rep : reports) all = all && rep.all_pass();
  out << (args.format == Fmt::machine ? verify_reports_machine(reports) : verify_reports_human(reports));
  return all ? 0 : 1;
}

} // namespace clidetail

// Argv surface: enumerate | gen | separate | solve | verify. Parse and
// validation problems exit 1 with a message naming the offending field;
// solve exits 0 on optimal, 2 on infeasible, 3 on the round cap.
inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  using namespace clidetail;

  CLI::App app{"exact hull description, separation, and cutting-plane optimization for "
               "two-monomial cardinality-constrained multilinear sets"};
  app.require_subcommand(1);

  std::map<std::string, Fmt> fmt_names{{"human", Fmt::human}, {"machine", Fmt::machine}, {"lp", Fmt::lp}};

  auto add_common = [&](CLI::App* cmd, CommonArgs& args, bool instance_required) {
    auto* opt = cmd->add_option("--instance", args.instance_path, "instance file (JSON)");
    if (instance_required) opt->required();
    cmd->add_option("--format", args.format, "output format")
        ->transform(CLI::CheckedTransformer(fmt_names, CLI::ignore_case));
  };

  CommonArgs enum_args;
  auto* cmd_enum = app.add_subcommand("enumerate", "list the feasible binary points");
  add_common(cmd_enum, enum_args, true);

  GenArgs gen_args;
  gen_args.format = Fmt::machine;
  auto* cmd_gen = app.add_subcommand("gen", "print the base system, one family row, or the full description");
  add_common(cmd_gen, gen_args, true);
  cmd_gen->add_flag("--all-q", gen_args.all_q, "every applicable (family, Q) row plus the base system");
  cmd_gen->add_option("--family", gen_args.family, "single family row (U1..U5, L1..L5)");
  cmd_gen->add_option("--q", gen_args.q, "comma-separated 1-based indices of Q (default empty)");
  cmd_gen->add_option("--i", gen_args.i, "set index parameter for U3/U4/L3/L4 (default 1)");
  cmd_gen->add_option("--k", gen_args.k, "companion index for U3/L3 (default: the other set)");

  SeparateArgs sep_args;
  sep_args.format = Fmt::machine;
  auto* cmd_sep = app.add_subcommand("separate", "most violated rows at a fractional point");
  add_common(cmd_sep, sep_args, true);
  cmd_sep->add_option("--point", sep_args.point_path, "point file: d0 d1 d2 d3 z1..zn rationals")->required();

  SolveArgs solve_args;
  auto* cmd_solve = app.add_subcommand("solve", "cutting-plane optimization to a binary optimum");
  add_common(cmd_solve, solve_args, true);
  cmd_solve->add_option("--objective", solve_args.objective_path, "objective file: 4+n rationals (z-space only)");
  auto* sense_opt = cmd_solve->add_option("--sense", solve_args.sense, "optimization sense")
                        ->check(CLI::IsMember({"min", "max"}));
  cmd_solve->add_option("--max-rounds", solve_args.max_rounds, "separation round cap")
      ->check(CLI::PositiveNumber)
      ->default_val(10000);
  cmd_solve->add_flag("--trace", solve_args.trace, "log per-round value and cut counts");
  cmd_solve->add_option("--emit-lp", solve_args.emit_lp_path, "write the final LP in text form to this path");

  VerifyArgs verify_args;
  auto* cmd_verify = app.add_subcommand("verify", "machine-check hull claims on an instance or the built-in matrix");
  add_common(cmd_verify, verify_args, false);
  cmd_verify->add_option("--check", verify_args.check, "suite, validity, hull, affine, face, or nested")
      ->check(CLI::IsMember({"suite", "validity", "hull", "affine", "face", "nested"}));
  cmd_verify->add_option("--trials", verify_args.trials, "random objectives per hull check")->check(CLI::PositiveNumber);
  cmd_verify->add_option("--seed", verify_args.seed, "seed for the random objectives");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1; // every parse or validation defect exits 1
  }

  solve_args.sense_explicit = sense_opt->count() > 0;

  try {
    if (cmd_enum->parsed()) return run_enumerate(enum_args, out);
    if (cmd_gen->parsed()) return run_gen(gen_args, out);
    if (cmd_sep->parsed()) return run_separate(sep_args, out);
    if (cmd_solve->parsed()) return run_solve(solve_args, out);
    if (cmd_verify->parsed()) return run_verify(verify_args, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "error: no subcommand\n";
  return 1;
}

} // namespace ccms2
