// useries: tabulate operator experiments as CSV or JSON.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "useries/useries.h"

namespace fs = std::filesystem;

namespace {

struct CliError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(us_status s) {
  if (s != US_OK) throw CliError(std::string(us_status_name(s)) + ": " + us_last_error());
}

struct FunctionDeleter {
  void operator()(us_function* f) const { us_function_free(f); }
};
using Function = std::unique_ptr<us_function, FunctionDeleter>;

struct CorpusDeleter {
  void operator()(us_corpus* c) const { us_corpus_free(c); }
};
using Corpus = std::unique_ptr<us_corpus, CorpusDeleter>;

struct EigenDeleter {
  void operator()(us_eigensystem* s) const { us_eigensystem_free(s); }
};
using EigenSys = std::unique_ptr<us_eigensystem, EigenDeleter>;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);
  return buf;
}

using Cell = std::variant<double, int, bool, std::string>;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
  // Trailing summary record (bound only).
  std::vector<std::pair<std::string, Cell>> summary;
};

std::string cell_text(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) return num(*d);
  if (const int* i = std::get_if<int>(&c)) return std::to_string(*i);
  if (const bool* b = std::get_if<bool>(&c)) return *b ? "true" : "false";
  return std::get<std::string>(c);
}

nlohmann::json cell_json(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) {
    if (!std::isfinite(*d)) return nullptr;
    return std::strtod(num(*d).c_str(), nullptr);
  }
  if (const int* i = std::get_if<int>(&c)) return *i;
  if (const bool* b = std::get_if<bool>(&c)) return *b;
  return std::get<std::string>(c);
}

std::string render_csv(const Table& t) {
  std::ostringstream os;
  for (size_t i = 0; i < t.header.size(); ++i) os << (i ? "," : "") << t.header[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell_text(row[i]);
    os << '\n';
  }
  if (!t.summary.empty()) {
    os << "# summary";
    for (const auto& [k, v] : t.summary) os << ',' << k << '=' << cell_text(v);
    os << '\n';
  }
  return os.str();
}

std::string render_json(const std::string& command, const Table& t) {
  nlohmann::ordered_json doc;
  doc["command"] = command;
  doc["columns"] = t.header;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json r;
    for (size_t i = 0; i < row.size(); ++i) r[t.header[i]] = cell_json(row[i]);
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  if (!t.summary.empty()) {
    nlohmann::ordered_json s;
    for (const auto& [k, v] : t.summary) s[k] = cell_json(v);
    doc["summary"] = std::move(s);
  }
  return doc.dump(2) + "\n";
}

struct Options {
  std::vector<int> ns;
  std::vector<double> rhos;
  std::string fn;
  int grid = 129;
  std::string grid_kind = "uniform";
  double tol = 0.0;
  std::string out;
  std::string format = "csv";
  std::string corpus;
};

// Parsed --fn: the function itself and, when it lies in C_0, its cofactor.
struct Input {
  std::string label;
  Function f;  // may be null when only h is meaningful
  Function h;  // null when f is not representable as Psi h
};

std::vector<double> parse_coeffs(const std::string& text) {
  std::vector<double> c;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw CliError("bad polynomial coefficient '" + item + "'");
    c.push_back(v);
  }
  if (c.empty()) throw CliError("empty polynomial");
  return c;
}

Input parse_input(const Options& o) {
  if (o.fn.empty()) throw CliError("--fn is required for this command");
  std::string text = o.fn;
  char role = 'h';
  if (text.size() > 2 && text[1] == '=' && (text[0] == 'h' || text[0] == 'f')) {
    role = text[0];
    text = text.substr(2);
  }
  us_function* raw = nullptr;
  if (text.rfind("poly:", 0) == 0) {
    const auto c = parse_coeffs(text.substr(5));
    check(us_function_poly(c.data(), c.size(), &raw));
  } else {
    us_corpus* cr = nullptr;
    check(us_corpus_load(o.corpus.empty() ? nullptr : o.corpus.c_str(), &cr));
    Corpus corpus(cr);
    check(us_corpus_get(corpus.get(), text.c_str(), &raw));
  }
  Function given(raw);
  Input in{o.fn, nullptr, nullptr};
  if (role == 'h') {
    us_function* f = nullptr;
    check(us_function_times_psi(given.get(), &f));
    in.f.reset(f);
    in.h = std::move(given);
  } else {
    if (us_function_is_poly(given.get())) {
      us_function* h = nullptr;
      if (us_function_deflate(given.get(), &h) == US_OK) in.h.reset(h);
    }
    in.f = std::move(given);
  }
  return in;
}

const us_function& need_h(const Input& in) {
  if (!in.h) throw CliError("--fn " + in.label + " is not in C_0 (need h=... or a polynomial f vanishing at 0 and 1)");
  return *in.h;
}

std::vector<double> make_grid(const Options& o) {
  if (o.grid < 2) throw CliError("--grid must be >= 2");
  std::vector<double> g(o.grid);
  check(us_grid_fill(o.grid_kind == "chebyshev" ? US_GRID_CHEBYSHEV : US_GRID_UNIFORM, o.grid, g.data()));
  return g;
}

us_series_config series_cfg(const Options& o, const std::vector<double>& grid) {
  return us_series_config{o.tol, 0, grid.data(), grid.size()};
}

void need_lists(const Options& o) {
  if (o.ns.empty()) throw CliError("--n needs at least one value");
  if (o.rhos.empty()) throw CliError("--rho needs at least one value");
}

Table run_apply(const Options& o) {
  need_lists(o);
  const Input in = parse_input(o);
  const auto xs = make_grid(o);
  Table t{{"n", "rho", "x", "f", "Uf"}, {}, {}};
  for (double rho : o.rhos)
    for (int n : o.ns) {
      std::vector<double> u(xs.size());
      check(us_apply_u(n, rho, in.f.get(), xs.data(), xs.size(), 0, u.data()));
      for (size_t i = 0; i < xs.size(); ++i) {
        double fx = 0.0;
        check(us_function_eval(in.f.get(), xs[i], &fx));
        t.rows.push_back({n, rho, xs[i], fx, u[i]});
      }
    }
  return t;
}

Table run_eigen(const Options& o) {
  need_lists(o);
  Table t{{"n", "rho", "j", "lambda", "asym_gap", "poly_dist", "coeffs"}, {}, {}};
  for (double rho : o.rhos)
    for (int n : o.ns) {
      us_eigensystem* raw = nullptr;
      check(us_eigensystem_create(n, rho, &raw));
      EigenSys sys(raw);
      for (int j = 0; j <= us_eigensystem_degree(sys.get()); ++j) {
        double lambda = 0.0;
        check(us_eigensystem_lambda(sys.get(), j, &lambda));
        size_t count = 0;
        check(us_eigensystem_poly(sys.get(), j, nullptr, 0, &count));
        std::vector<double> c(count);
        check(us_eigensystem_poly(sys.get(), j, c.data(), c.size(), &count));
        std::string joined;
        for (size_t i = 0; i < c.size(); ++i) joined += (i ? ";" : "") + num(c[i]);
        us_asymptotic_record rec{};
        check(us_asymptotic_report(rho, j, &n, 1, &rec));
        t.rows.push_back({n, rho, j, lambda, rec.eigenvalue_gap, rec.poly_distance, joined});
      }
    }
  return t;
}

Table run_series(const Options& o) {
  need_lists(o);
  const Input in = parse_input(o);
  const us_function& h = need_h(in);
  const auto xs = make_grid(o);
  const us_series_config cfg = series_cfg(o, xs);
  Table t{{"n", "rho", "x", "f", "A_f", "cofactor", "iters"}, {}, {}};
  for (double rho : o.rhos)
    for (int n : o.ns) {
      std::vector<double> a(xs.size()), cof(xs.size());
      int iters = 0;
      check(us_series_apply(n, rho, &h, &cfg, xs.data(), xs.size(), a.data(), cof.data(), &iters));
      for (size_t i = 0; i < xs.size(); ++i) {
        double fx = 0.0;
        check(us_function_eval(in.f.get(), xs[i], &fx));
        t.rows.push_back({n, rho, xs[i], fx, a[i], cof[i], iters});
      }
    }
  return t;
}

Table run_voronovskaya(const Options& o) {
  need_lists(o);
  const Input in = parse_input(o);
  const us_function& h = need_h(in);
  const auto xs = make_grid(o);
  const us_series_config cfg = series_cfg(o, xs);
  Table t{{"n", "rho", "x", "f", "neg_inv", "A_f", "H"}, {}, {}};
  for (double rho : o.rhos) {
    std::vector<double> inv(xs.size());
    check(us_inverse_neg(rho, &h, xs.data(), xs.size(), inv.data()));
    for (int n : o.ns) {
      std::vector<double> a(xs.size());
      check(us_series_apply(n, rho, &h, &cfg, xs.data(), xs.size(), a.data(), nullptr, nullptr));
      for (size_t i = 0; i < xs.size(); ++i) {
        double fx = 0.0;
        check(us_function_eval(in.f.get(), xs[i], &fx));
        t.rows.push_back({n, rho, xs[i], fx, inv[i], a[i], a[i] - inv[i]});
      }
    }
  }
  return t;
}

Table run_converge(const Options& o) {
  need_lists(o);
  const Input in = parse_input(o);
  const us_function& h = need_h(in);
  const auto grid = make_grid(o);
  const us_series_config cfg = series_cfg(o, grid);
  Table t{{"n", "rho", "sup_H", "sup_rhs", "iters"}, {}, {}};
  for (double rho : o.rhos) {
    std::vector<us_convergence_record> recs(o.ns.size());
    check(us_convergence_table(&h, rho, o.ns.data(), o.ns.size(), grid.data(), grid.size(), &cfg, recs.data()));
    for (const auto& r : recs) t.rows.push_back({r.n, r.rho, r.sup_h, r.sup_rhs, r.iterations});
  }
  return t;
}

Table run_bound(const Options& o) {
  need_lists(o);
  if (o.ns.size() != 1 || o.rhos.size() != 1) throw CliError("bound takes a single --n and a single --rho");
  const Input in = parse_input(o);
  const us_function& h = need_h(in);
  const auto grid = make_grid(o);
  const us_series_config cfg = series_cfg(o, grid);
  std::vector<double> lhs(grid.size()), rhs(grid.size());
  us_bound_summary s{};
  check(us_bound_check(&h, o.ns[0], o.rhos[0], grid.data(), grid.size(), -1.0, &cfg, lhs.data(), rhs.data(), &s));
  Table t{{"x", "lhs", "rhs", "margin"}, {}, {}};
  for (size_t i = 0; i < grid.size(); ++i) t.rows.push_back({grid[i], lhs[i], rhs[i], rhs[i] - lhs[i]});
  t.summary = {{"n", s.n},           {"rho", s.rho},       {"epsilon", s.epsilon},
               {"omega1", s.omega1}, {"omega2", s.omega2}, {"margin", s.margin},
               {"slack", s.slack},   {"iters", s.iterations}, {"satisfied", s.satisfied != 0}};
  return t;
}

fs::path resolve_out(const std::string& out) {
  fs::path p(out);
  if (p.is_relative())
    if (const char* dir = std::getenv("USERIES_OUTPUT_DIR"); dir && *dir) p = fs::path(dir) / p;
  return p;
}

void write_atomic(const fs::path& path, const std::string& text) {
  const fs::path tmp = path.string() + ".partial";
  try {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    {
      std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
      if (!os) throw CliError("cannot open " + tmp.string() + " for writing");
      os << text;
      os.flush();
      if (!os) throw CliError("write to " + tmp.string() + " failed");
    }
    fs::rename(tmp, path);
  } catch (...) {
    std::error_code ec;
    fs::remove(tmp, ec);
    throw;
  }
}

constexpr const char* kColumns = R"(Output columns (one CSV header row, numbers with 12 significant digits):
  apply         n,rho,x,f,Uf
  eigen         n,rho,j,lambda,asym_gap,poly_dist,coeffs   (coeffs: ';'-separated, x^0 first)
  series        n,rho,x,f,A_f,cofactor,iters
  voronovskaya  n,rho,x,f,neg_inv,A_f,H
  converge      n,rho,sup_H,sup_rhs,iters
  bound         x,lhs,rhs,margin   followed by '# summary,key=value,...'
JSON output holds {"command", "columns", "rows"[, "summary"]} with the same fields.

--fn accepts h=NAME, h=poly:c0,c1,..., f=NAME or f=poly:c0,c1,...; h is the cofactor of
f = x(1-x) h, and a bare NAME means h=NAME.  Names come from the corpus file
(--corpus, else $USERIES_CORPUS, else the bundled data/corpus.json).
Relative --out paths are placed under $USERIES_OUTPUT_DIR when it is set.)";

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Operator experiments for U_n^rho and its geometric series"};
  app.footer(kColumns);
  app.require_subcommand(1);
  Options o;

  const auto add_common = [&o](CLI::App* sub, bool needs_fn) {
    sub->add_option("--n", o.ns, "degree n, or a comma-separated list")->delimiter(',')->required();
    sub->add_option("--rho", o.rhos, "rho, or a comma-separated list")->delimiter(',')->required();
    if (needs_fn) sub->add_option("--fn", o.fn, "function: h=NAME | h=poly:c0,c1,... | f=...")->required();
    sub->add_option("--grid", o.grid, "grid size")->capture_default_str()->check(CLI::Range(2, 100000));
    sub->add_option("--grid-kind", o.grid_kind, "uniform or chebyshev")
        ->capture_default_str()
        ->check(CLI::IsMember({"uniform", "chebyshev"}));
    sub->add_option("--tol", o.tol, "series tail tolerance (default per function kind)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--out", o.out, "output file (stdout when omitted)");
    sub->add_option("--format", o.format, "csv or json")->capture_default_str()->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--corpus", o.corpus, "function corpus file");
  };

  struct Command {
    const char* name;
    const char* help;
    bool needs_fn;
    Table (*run)(const Options&);
  };
  const Command commands[] = {
      {"apply", "tabulate U_n^rho f on the grid", true, run_apply},
      {"eigen", "eigenvalues, eigenpolynomials and distance to the limit", false, run_eigen},
      {"series", "tabulate A_n^rho f and the iteration count", true, run_series},
      {"voronovskaya", "tabulate -A_rho^{-1} f, A_n^rho f and their difference H", true, run_voronovskaya},
      {"converge", "sup-grid residual and bound for each n", true, run_converge},
      {"bound", "pointwise check of the residual bound", true, run_bound},
  };
  std::vector<std::pair<CLI::App*, const Command*>> subs;
  for (const Command& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    add_common(sub, c.needs_fn);
    sub->footer(kColumns);
    subs.emplace_back(sub, &c);
  }

  CLI11_PARSE(app, argc, argv);

  for (const auto& [sub, cmd] : subs) {
    if (!sub->parsed()) continue;
    try {
      const Table t = cmd->run(o);
      const std::string text = o.format == "json" ? render_json(cmd->name, t) : render_csv(t);
      if (o.out.empty()) {
        std::cout << text;
        std::cout.flush();
      } else {
        write_atomic(resolve_out(o.out), text);
      }
      return 0;
    } catch (const std::exception& e) {
      std::cerr << "useries " << cmd->name << ": error: " << e.what() << '\n';
      return 1;
    }
  }
  return 1;
}
