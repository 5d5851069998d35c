#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "akx/akx.hpp"

namespace {

akx::Rat parse_p(const std::string& text) {
  auto p = akx::parse_rat(text);
  if (!p) throw std::invalid_argument("p must be an exact fraction NUM/DEN, got '" + text + "'");
  return *p;
}

akx::SetFamily read_family_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open input file '" + path + "'");
  return akx::read_setfam(in);
}

void write_family_file(const std::string& path, const akx::SetFamily& f) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open output file '" + path + "'");
  akx::write_setfam(out, f);
  if (!out) throw std::invalid_argument("error writing '" + path + "'");
}

std::string join_r(const std::vector<int>& rs) {
  std::string out = "{";
  for (std::size_t i = 0; i < rs.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(rs[i]);
  }
  return out + "}";
}

int cmd_w(int n, int t, const std::string& p_text) {
  const akx::Rat p = parse_p(p_text);
  const akx::WResult res = akx::w_closed(n, t, p);
  std::cout << "w = " << akx::rat_str(res.value) << " (~" << std::setprecision(17)
            << akx::rat_double(res.value) << ")\n";
  std::cout << "optimal_r = " << join_r(res.optimal_r) << "\n";
  std::cout << "regime = " << akx::regime_str(res.regime) << "\n";
  return 0;
}

int cmd_table(int n, int tmax, int grid, const std::string& out_path) {
  if (n < 1 || tmax < 1 || tmax > n) throw std::invalid_argument("need 1 <= tmax <= n");
  if (grid < 2) throw std::invalid_argument("need grid >= 2");
  const auto rows = akx::table_rows(n, tmax, grid);
  if (out_path.empty() || out_path == "-") {
    akx::write_table_csv(std::cout, rows);
    return 0;
  }
  std::ofstream out(out_path);
  if (!out) throw std::invalid_argument("cannot open output file '" + out_path + "'");
  akx::write_table_csv(out, rows);
  if (!out) throw std::invalid_argument("error writing '" + out_path + "'");
  return 0;
}

int cmd_verify(const std::string& suite) {
  std::vector<akx::CheckResult> results;
  if (suite == "closed-form")
    results = akx::verify_closed_form();
  else if (suite == "shifting")
    results = akx::verify_shifting();
  else if (suite == "surgery")
    results = akx::verify_surgery();
  else if (suite == "katona")
    results = akx::verify_katona();
  else if (suite == "hamming")
    results = akx::verify_hamming();
  else if (suite == "lifting")
    results = akx::verify_lifting();
  else if (suite == "all")
    results = akx::verify_all();
  else
    throw std::invalid_argument("unknown suite '" + suite +
                                "' (closed-form|shifting|surgery|katona|hamming|lifting|all)");
  int failed = 0;
  for (const auto& r : results) {
    std::cout << (r.pass ? "ok " : "FAIL ") << r.name << ": " << r.detail << "\n";
    if (!r.pass) ++failed;
  }
  std::cout << "passed " << results.size() - failed << "/" << results.size() << " checks\n";
  return failed == 0 ? 0 : 1;
}

void print_measures(const akx::SetFamily& before, const akx::SetFamily& after,
                    const std::string& p_text) {
  if (p_text.empty()) return;
  const akx::Rat p = parse_p(p_text);
  std::cout << "measure_before = " << akx::rat_str(akx::measure(before, p)) << "\n";
  std::cout << "measure_after = " << akx::rat_str(akx::measure(after, p)) << "\n";
}

int cmd_compress(const std::string& in_path, const std::string& out_path,
                 const std::string& trace_path, const std::string& p_text) {
  const akx::SetFamily f = read_family_file(in_path);
  const akx::CompressResult res = akx::left_compress(f);
  write_family_file(out_path, res.family);
  if (!trace_path.empty()) {
    std::ofstream out(trace_path);
    if (!out) throw std::invalid_argument("cannot open trace file '" + trace_path + "'");
    akx::write_trace(out, res.trace);
  }
  print_measures(f, res.family, p_text);
  return 0;
}

int cmd_stabilize(int t, const std::string& in_path, const std::string& out_path,
                  const std::string& p_text) {
  const akx::SetFamily f = read_family_file(in_path);
  const akx::SetFamily g = akx::stabilize(f, t);
  write_family_file(out_path, g);
  print_measures(f, g, p_text);
  std::cout << "t_intersecting_after = " << (akx::is_t_intersecting(g, t) ? "yes" : "no") << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact arithmetic for maximum-weight t-intersecting set families"};
  app.require_subcommand(1);

  int w_n = 0, w_t = 0;
  std::string w_p;
  auto* w_cmd = app.add_subcommand("w", "Maximum mu_p weight of a t-intersecting family");
  w_cmd->add_option("--n", w_n, "ground set size")->required();
  w_cmd->add_option("--t", w_t, "intersection threshold")->required();
  w_cmd->add_option("--p", w_p, "probability as NUM/DEN")->required();

  int tb_n = 20, tb_tmax = 5, tb_grid = 200;
  std::string tb_out;
  auto* tb_cmd = app.add_subcommand("table", "CSV of w(n,t,p) curves over a p grid");
  tb_cmd->add_option("--n", tb_n, "ground set size");
  tb_cmd->add_option("--tmax", tb_tmax, "largest t");
  tb_cmd->add_option("--grid", tb_grid, "grid denominator");
  tb_cmd->add_option("--out", tb_out, "output file ('-' for stdout)");

  std::string vf_suite;
  auto* vf_cmd = app.add_subcommand("verify", "Run a verification suite");
  vf_cmd->add_option("--suite", vf_suite, "closed-form|shifting|surgery|katona|hamming|lifting|all")
      ->required();

  std::string cp_in, cp_out, cp_trace, cp_p;
  auto* cp_cmd = app.add_subcommand("compress", "Left-compress a family file");
  cp_cmd->add_option("--in", cp_in, "input SETFAM file")->required();
  cp_cmd->add_option("--out", cp_out, "output SETFAM file")->required();
  cp_cmd->add_option("--trace", cp_trace, "write the shift trace here");
  cp_cmd->add_option("--p", cp_p, "report measures at this NUM/DEN");

  int st_t = 0;
  std::string st_in, st_out, st_p;
  auto* st_cmd = app.add_subcommand("stabilize", "Stabilize a t-intersecting family file");
  st_cmd->add_option("--t", st_t, "intersection threshold")->required();
  st_cmd->add_option("--in", st_in, "input SETFAM file")->required();
  st_cmd->add_option("--out", st_out, "output SETFAM file")->required();
  st_cmd->add_option("--p", st_p, "report measures at this NUM/DEN");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (w_cmd->parsed()) return cmd_w(w_n, w_t, w_p);
    if (tb_cmd->parsed()) return cmd_table(tb_n, tb_tmax, tb_grid, tb_out);
    if (vf_cmd->parsed()) return cmd_verify(vf_suite);
    if (cp_cmd->parsed()) return cmd_compress(cp_in, cp_out, cp_trace, cp_p);
    if (st_cmd->parsed()) return cmd_stabilize(st_t, st_in, st_out, st_p);
  } catch (const akx::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
