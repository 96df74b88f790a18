#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "homchains/chain.hpp"
#include "homchains/euler.hpp"
#include "homchains/homcomplex.hpp"
#include "homchains/morse.hpp"
#include "homchains/poset.hpp"
#include "homchains/verify.hpp"

using json = nlohmann::ordered_json;
using namespace homchains;

namespace {

constexpr const char* report_schema = "homchains.report/1";

enum exit_code : int { ok = 0, failed = 1, usage = 2 };

struct input_options {
  std::string spec;
  std::string poset;
  std::size_t max_cells = default_cap;
  unsigned threads = 1;
  std::string format = "json";
};

struct loaded {
  std::optional<chain_spec> spec;
  cell_complex complex;
};

loaded load(const input_options& in) {
  loaded out;
  if (!in.spec.empty() == !in.poset.empty()) throw input_error("give exactly one of --spec and --poset");
  if (!in.spec.empty()) {
    out.spec = chain_spec::parse(in.spec);
    out.complex = chain_product_complex(*out.spec, in.max_cells);
  } else {
    std::ifstream f(in.poset);
    if (!f) throw input_error("cannot open " + in.poset);
    out.complex = maximal_chain_complex(read_poset_text(f), in.max_cells);
  }
  return out;
}

template <class T>
std::string tuple_text(const std::vector<T>& v) {
  std::ostringstream s;
  s << '(';
  for (std::size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << v[i];
  s << ')';
  return s.str();
}

json big_json(const big_int& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(v);
  return v.str();
}

json homology_json(const homology_report& h) {
  json t = json::array();
  for (const auto& level : h.torsion) {
    json row = json::array();
    for (const auto& f : level) row.push_back(big_json(f));
    t.push_back(row);
  }
  return {{"betti", h.betti}, {"torsion", t}, {"euler", h.euler}};
}

std::string torsion_text(const homology_report& h) {
  if (h.torsion_free()) return "none";
  std::string s;
  for (std::size_t d = 0; d < h.torsion.size(); ++d)
    for (const auto& f : h.torsion[d]) s += "H" + std::to_string(d) + ":Z/" + f.str() + " ";
  return s;
}

// FNV-1a over the matched pairs in cell order.
std::string matching_digest(const cell_complex& c, const morse_matching& m) {
  std::uint64_t h = 1469598103934665603ULL;
  auto feed = [&h](const std::string& s) {
    for (unsigned char ch : s) {
      h ^= ch;
      h *= 1099511628211ULL;
    }
  };
  for (cell_id x = 0; x < c.size(); ++x) {
    if (!m.matched(x) || m.partner[x] < x) continue;
    feed(c.key(x));
    feed(">");
    feed(c.key(m.partner[x]));
    feed("\n");
  }
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << h;
  return s.str();
}

json complex_json(const cell_complex& c) {
  incidence_table signs(c);
  json cells = json::object(), faces = json::object();
  for (int d = 0; d <= c.dimension(); ++d) {
    json keys = json::array();
    for (cell_id x = c.first_of_dim(d); x < c.first_of_dim(d) + c.count_of_dim(d); ++x) keys.push_back(c.key(x));
    cells[std::to_string(d)] = keys;
  }
  for (cell_id x = 0; x < c.size(); ++x) {
    auto f = c.facets(x);
    if (f.empty()) continue;
    json row = json::array();
    for (std::size_t k = 0; k < f.size(); ++k) row.push_back({c.key(f[k]), signs.sign(x, k)});
    faces[c.key(x)] = row;
  }
  return {{"dims", c.f_vector()}, {"cells", cells}, {"faces", faces}};
}

void write_matrices(const cell_complex& c, const std::string& dir) {
  std::filesystem::create_directories(dir);
  auto cc = boundary_matrices(c);
  for (std::size_t d = 1; d < cc.boundary.size(); ++d) {
    std::ofstream out(std::filesystem::path(dir) / ("d" + std::to_string(d) + ".txt"));
    if (!out) throw input_error("cannot write matrices to " + dir);
    write_coordinate_list(out, cc.boundary[d]);
  }
}

json trace_json(const fiber_trace& t) {
  json loops = json::array();
  for (const auto& l : t.loops)
    loops.push_back({{"r", l.loop.r}, {"s", l.loop.s}, {"position", l.position}, {"rho", l.rho == rho_value::a ? "a" : "b"}});
  json out = {{"cell", t.cell.to_string()}, {"loops", loops}, {"critical", t.critical()}};
  out["partner"] = t.partner ? json(t.partner->to_string()) : json(nullptr);
  return out;
}

void print_trace_table(std::ostream& out, const fiber_trace& t) {
  out << "trace " << t.cell.to_string() << '\n';
  for (const auto& l : t.loops)
    out << "  (r,s) = (" << l.loop.r << ',' << l.loop.s << ")  j = " << l.position
        << "  rho = " << (l.rho == rho_value::a ? 'a' : 'b') << '\n';
  if (t.partner) out << "  matched with " << t.partner->to_string() << '\n';
  else out << "  critical\n";
}

void emit(const input_options& in, const json& j, const std::string& table) {
  if (in.format == "json") std::cout << j.dump(2) << '\n';
  else std::cout << table;
}

// ---------------------------------------------------------------------------

int cmd_build(const input_options& in, bool emit_complex, const std::string& matrices) {
  auto l = load(in);
  const auto& c = l.complex;
  if (!matrices.empty()) write_matrices(c, matrices);
  json j = json::object();
  if (l.spec) j["spec"] = l.spec->to_string();
  j["dimension"] = c.dimension();
  j["f_vector"] = c.f_vector();
  if (emit_complex) j["complex"] = complex_json(c);
  std::ostringstream t;
  if (l.spec) t << "spec       " << l.spec->to_string() << '\n';
  t << "dimension  " << c.dimension() << "\nf-vector   " << tuple_text(c.f_vector()) << '\n';
  emit(in, j, t.str());
  return ok;
}

int cmd_match(const input_options& in, bool emit_critical, bool emit_pairs, const std::vector<std::string>& traces) {
  auto l = load(in);
  if (!l.spec) throw input_error("match needs --spec");
  const auto& c = l.complex;
  auto m = match_product_of_chains(c, *l.spec, in.threads);
  validate_acyclic(m, c);
  auto crit = critical_cell_words(c, m);
  std::vector<std::size_t> counts;
  for (const auto& level : crit) counts.push_back(level.size());

  json j = {{"spec", l.spec->to_string()}, {"matched_pairs", m.matched_pairs()}, {"critical_counts", counts},
            {"digest", matching_digest(c, m)}};
  std::ostringstream t;
  t << "spec           " << l.spec->to_string() << "\nmatched pairs  " << m.matched_pairs()
    << "\ncritical       " << tuple_text(counts) << "\ndigest         " << matching_digest(c, m) << '\n';
  if (emit_critical) {
    json cj = json::array();
    for (const auto& level : crit) {
      json row = json::array();
      for (const auto& w : level) row.push_back(w.to_string());
      cj.push_back(row);
    }
    j["critical"] = cj;
    for (std::size_t d = 0; d < crit.size(); ++d)
      for (const auto& w : crit[d]) t << "  " << d << "  " << w.to_string() << '\n';
  }
  if (emit_pairs) {
    json pj = json::array();
    for (cell_id x = 0; x < c.size(); ++x)
      if (m.matched(x) && m.partner[x] > x) pj.push_back({c.key(x), c.key(m.partner[x])});
    j["pairs"] = pj;
  }
  if (!traces.empty()) {
    json tj = json::array();
    for (const auto& cell : traces) {
      auto tr = trace_fibers(*l.spec, cell_word::parse(cell));
      tj.push_back(trace_json(tr));
      print_trace_table(t, tr);
    }
    j["traces"] = tj;
  }
  emit(in, j, t.str());
  return ok;
}

int cmd_verify(const input_options& in, const std::vector<std::string>& suites) {
  if (in.spec.empty()) throw input_error("verify needs --spec");
  auto spec = chain_spec::parse(in.spec);
  auto rep = run_verification(spec, suites.empty() ? std::vector<std::string>{"all"} : suites,
                              {in.max_cells, in.threads});
  json rows = json::array();
  std::ostringstream t;
  t << "spec " << spec.to_string() << '\n';
  for (const auto& s : rep.suites) {
    rows.push_back({{"suite", s.name}, {"passed", s.passed}, {"checked", s.checked}, {"detail", s.detail}});
    t << (s.passed ? "PASS " : "FAIL ") << std::left << std::setw(15) << s.name << s.detail << '\n';
  }
  emit(in, {{"spec", spec.to_string()}, {"passed", rep.passed()}, {"suites", rows}}, t.str());
  return rep.passed() ? ok : failed;
}

int cmd_report(const input_options& in) {
  auto l = load(in);
  const auto& c = l.complex;
  auto h = homology(c);
  json j = {{"schema", report_schema}};
  j["input"] = l.spec ? json{{"spec", l.spec->to_string()}} : json{{"poset", std::filesystem::path(in.poset).filename().string()}};
  j["dimension"] = c.dimension();
  j["f_vector"] = c.f_vector();
  std::ostringstream t;
  if (l.spec) t << "spec       " << l.spec->to_string() << '\n';
  t << "f-vector   " << tuple_text(c.f_vector()) << '\n';
  if (l.spec) {
    auto m = match_product_of_chains(c, *l.spec, in.threads);
    validate_acyclic(m, c);
    std::vector<std::size_t> counts;
    for (const auto& level : critical_cells(c, m)) counts.push_back(level.size());
    j["critical_counts"] = counts;
    j["matching"] = {{"pairs", m.matched_pairs()}, {"digest", matching_digest(c, m)}};
    t << "critical   " << tuple_text(counts) << "\ndigest     " << matching_digest(c, m) << '\n';
  }
  j["homology"] = homology_json(h);
  t << "betti      " << tuple_text(h.betti) << "\ntorsion    " << torsion_text(h) << "\neuler      " << h.euler << '\n';
  emit(in, j, t.str());
  return ok;
}

int cmd_euler(const input_options& in, int n_max) {
  auto rows = euler_table(n_max);
  json arr = json::array();
  std::ostringstream t;
  t << std::right << std::setw(3) << "n" << std::setw(24) << "chi" << "  agree\n";
  bool all = true;
  for (const auto& r : rows) {
    arr.push_back({{"n", r.n},
                   {"formula", big_json(r.formula)},
                   {"recursion", big_json(r.recursion)},
                   {"closed_form", big_json(r.closed_form)},
                   {"f_vector", big_json(r.f_vector)},
                   {"agree", r.consistent()}});
    t << std::setw(3) << r.n << std::setw(24) << r.formula.str() << "  " << (r.consistent() ? "yes" : "NO") << '\n';
    all = all && r.consistent();
  }
  emit(in, {{"rows", arr}, {"agree", all}}, t.str());
  return all ? ok : failed;
}

void add_input(CLI::App* sub, input_options& in, bool poset) {
  sub->add_option("--spec", in.spec, "chain lengths, e.g. 2,2,2");
  if (poset) sub->add_option("--poset", in.poset, "graded poset file")->check(CLI::ExistingFile);
  sub->add_option("--max-cells", in.max_cells, "cap on cells and words")->check(CLI::PositiveNumber);
  sub->add_option("--threads", in.threads, "worker threads")->check(CLI::PositiveNumber);
  sub->add_option("--format", in.format, "json or table")->check(CLI::IsMember({"json", "table"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"homomorphism complexes of maximal chains"};
  app.require_subcommand(1);
  input_options in;

  auto* build = app.add_subcommand("build", "construct the complex and print its f-vector");
  add_input(build, in, true);
  bool emit_complex = false;
  std::string matrices;
  build->add_flag("--emit-complex", emit_complex, "include cells and signed faces (json)");
  build->add_option("--matrices", matrices, "write boundary matrices as coordinate lists into DIR");

  auto* match = app.add_subcommand("match", "run the matching on a product of chains");
  add_input(match, in, false);
  bool emit_critical = false, emit_pairs = false;
  std::vector<std::string> traces;
  match->add_flag("--emit-critical", emit_critical, "list the critical cells");
  match->add_flag("--emit-pairs", emit_pairs, "list matched pairs (json)");
  match->add_option("--emit-trace", traces, "print the loop trace of CELL")->take_all();

  auto* verify = app.add_subcommand("verify", "run invariant suites");
  add_input(verify, in, false);
  std::vector<std::string> suites;
  verify->add_option("--suite", suites, "suites, comma separated, or all")->delimiter(',');

  auto* report = app.add_subcommand("report", "f-vector, critical cells, homology and matching digest");
  add_input(report, in, true);

  auto* euler = app.add_subcommand("euler", "Euler characteristics of the Boolean case");
  int n_max = 20;
  euler->add_option("--n-max", n_max, "largest n")->check(CLI::Range(1, 500));
  euler->add_option("--format", in.format, "json or table")->check(CLI::IsMember({"json", "table"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? ok : usage;
  }

  try {
    if (*build) return cmd_build(in, emit_complex, matrices);
    if (*match) return cmd_match(in, emit_critical, emit_pairs, traces);
    if (*verify) return cmd_verify(in, suites);
    if (*report) return cmd_report(in);
    return cmd_euler(in, n_max);
  } catch (const input_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return usage;
  } catch (const cap_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return usage;
  } catch (const error& e) {
    std::cerr << "failure: " << e.what() << '\n';
    return failed;
  }
}
