// specdist: command-line front end over the C API.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "specdist.h"

namespace {

using json = nlohmann::ordered_json;

enum class Format { Human, Csv, Json };

// Exit codes: 0 success, 1 usage/parse/validation failure, 2 no convergence.
constexpr int kExitFailure = 1;
constexpr int kExitNoConvergence = 2;

struct ApiError {
  sd_status status;
  std::string message;
};

void check(sd_status s) {
  if (s != SD_OK) throw ApiError{s, std::string(sd_status_string(s)) + ": " + sd_last_error()};
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using TriplePtr = std::unique_ptr<sd_triple, Deleter<sd_triple, sd_triple_free>>;
using StatePtr = std::unique_ptr<sd_state, Deleter<sd_state, sd_state_free>>;
using MetricPtr = std::unique_ptr<sd_metric, Deleter<sd_metric, sd_metric_free>>;
using ProductPtr = std::unique_ptr<sd_product, Deleter<sd_product, sd_product_free>>;
using BerezinPtr = std::unique_ptr<sd_berezin, Deleter<sd_berezin, sd_berezin_free>>;

TriplePtr load_triple(const std::string& arg) {
  sd_triple* t = nullptr;
  check(sd_triple_load(arg.c_str(), &t));
  return TriplePtr(t);
}

StatePtr load_state(const std::string& arg) {
  sd_state* s = nullptr;
  check(sd_state_load(arg.c_str(), &s));
  return StatePtr(s);
}

StatePtr simplex_state(const std::vector<double>& p) {
  sd_state* s = nullptr;
  check(sd_state_simplex(static_cast<int>(p.size()), p.data(), &s));
  return StatePtr(s);
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ApiError{SD_ERR_PARSE, "cannot read number \"" + item + "\" in \"" + text + "\""};
    }
  }
  return out;
}

// --- output -------------------------------------------------------------------

using Cell = std::variant<double, long long, std::string>;

class Table {
 public:
  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}
  void add(std::vector<Cell> row) { rows_.push_back(std::move(row)); }

  void write(std::ostream& os, Format f) const {
    if (f == Format::Json) {
      json arr = json::array();
      for (const auto& row : rows_) {
        json obj = json::object();
        for (size_t k = 0; k < columns_.size(); ++k) obj[columns_[k]] = to_json(row[k]);
        arr.push_back(obj);
      }
      os << arr.dump(2) << "\n";
      return;
    }
    std::vector<std::vector<std::string>> text;
    for (const auto& row : rows_) {
      std::vector<std::string> r;
      for (const auto& c : row) r.push_back(to_text(c, f));
      text.push_back(std::move(r));
    }
    if (f == Format::Csv) {
      write_csv_row(os, columns_);
      for (const auto& r : text) write_csv_row(os, r);
      return;
    }
    std::vector<size_t> width(columns_.size());
    for (size_t k = 0; k < columns_.size(); ++k) width[k] = columns_[k].size();
    for (const auto& r : text)
      for (size_t k = 0; k < r.size(); ++k) width[k] = std::max(width[k], r[k].size());
    auto line = [&](const std::vector<std::string>& r) {
      for (size_t k = 0; k < r.size(); ++k) {
        os << r[k];
        if (k + 1 < r.size()) os << std::string(width[k] - r[k].size() + 2, ' ');
      }
      os << "\n";
    };
    line(columns_);
    for (const auto& r : text) line(r);
  }

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;

  static std::string number(double x, Format f) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (std::isnan(x)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, f == Format::Human ? "%.6g" : "%.17g", x);
    return buf;
  }

  static std::string to_text(const Cell& c, Format f) {
    if (const double* d = std::get_if<double>(&c)) return number(*d, f);
    if (const long long* i = std::get_if<long long>(&c)) return std::to_string(*i);
    return std::get<std::string>(c);
  }

  static json to_json(const Cell& c) {
    if (const double* d = std::get_if<double>(&c)) {
      if (std::isinf(*d)) return json{{"type", *d > 0 ? "inf" : "-inf"}};
      if (std::isnan(*d)) return nullptr;
      return *d;
    }
    if (const long long* i = std::get_if<long long>(&c)) return *i;
    return std::get<std::string>(c);
  }

  static void write_csv_row(std::ostream& os, const std::vector<std::string>& r) {
    for (size_t k = 0; k < r.size(); ++k) {
      const std::string& s = r[k];
      if (s.find_first_of(",\"\n") != std::string::npos) {
        os << '"';
        for (char ch : s) os << (ch == '"' ? "\"\"" : std::string(1, ch));
        os << '"';
      } else {
        os << s;
      }
      os << (k + 1 < r.size() ? "," : "\n");
    }
  }
};

struct Global {
  sd_options opts{};
  std::string format = "human";
  std::string out;
  std::string method = "barrier";

  Format fmt() const { return format == "csv" ? Format::Csv : format == "json" ? Format::Json : Format::Human; }
};

class Output {
 public:
  explicit Output(const Global& g) : fmt_(g.fmt()) {
    if (!g.out.empty()) {
      file_.open(g.out);
      if (!file_) throw ApiError{SD_ERR_INVALID_ARGUMENT, "cannot write \"" + g.out + "\""};
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
  void emit(const Table& t) { t.write(stream(), fmt_); }

 private:
  Format fmt_;
  std::ofstream file_;
};

// --- commands -------------------------------------------------------------------

struct DistArgs {
  std::string triple, phi, psi;
  bool dual = false;
};

int cmd_dist(const Global& g, const DistArgs& a) {
  const TriplePtr t = load_triple(a.triple);
  const StatePtr phi = load_state(a.phi), psi = load_state(a.psi);
  std::vector<double> optimizer(sd_triple_algebra_dim(t.get()));
  sd_distance d{};
  const sd_status s = a.dual ? sd_distance_dual(t.get(), phi.get(), psi.get(), &g.opts, &d, optimizer.data())
                             : sd_distance_primal(t.get(), phi.get(), psi.get(), &g.opts, &d, optimizer.data());
  if (s == SD_ERR_NO_CONVERGENCE) {
    std::cerr << "error: " << sd_status_string(s) << ": " << sd_last_error() << " (best lower bound " << d.value
              << " after " << d.iterations << " iterations)\n";
    return kExitNoConvergence;
  }
  check(s);
  Output out(g);
  Table table({"triple", "method", "value", "gap", "iterations"});
  table.add({sd_triple_label(t.get()), a.dual ? "dual" : "primal", d.value, d.gap,
             static_cast<long long>(d.iterations)});
  out.emit(table);
  return 0;
}

struct PythagorasArgs {
  std::string left, right;
  int grid = 0;
  bool pure = false;
  int random = 0;
  std::string phi1, phi2, psi1, psi2;
  bool direct = false;
};

struct FactorState {
  StatePtr state;
  std::string label;
};

std::vector<FactorState> grid_states(const sd_triple* t, int n) {
  if (sd_triple_state_dim(t) != 2) {
    throw ApiError{SD_ERR_INVALID_ARGUMENT, std::string("--grid needs factors with 2x2 states; \"") +
                                                sd_triple_label(t) + "\" has size " +
                                                std::to_string(sd_triple_state_dim(t))};
  }
  std::vector<FactorState> out;
  for (int i = 0; i < n; ++i) {
    const double p = n == 1 ? 0.5 : static_cast<double>(i) / (n - 1);
    char label[32];
    std::snprintf(label, sizeof label, "p=%.4g", p);
    out.push_back({simplex_state({p, 1.0 - p}), label});
  }
  return out;
}

std::vector<FactorState> pure_states(const sd_triple* t) {
  const int n = sd_triple_state_dim(t);
  std::vector<FactorState> out;
  for (int k = 0; k < n; ++k) {
    std::vector<double> p(n, 0.0);
    p[k] = 1.0;
    out.push_back({simplex_state(p), "e" + std::to_string(k + 1)});
  }
  return out;
}

int cmd_pythagoras(const Global& g, const PythagorasArgs& a) {
  const TriplePtr left = load_triple(a.left), right = load_triple(a.right);
  sd_product* raw = nullptr;
  check(sd_product_create(left.get(), right.get(), &raw));
  const ProductPtr prod(raw);

  struct Point {
    StatePtr state;
    std::string label;
  };
  auto combine = [&](const FactorState& s1, const FactorState& s2) {
    sd_state* s = nullptr;
    check(sd_product_state(prod.get(), s1.state.get(), s2.state.get(), &s));
    return Point{StatePtr(s), s1.label + "|" + s2.label};
  };

  std::vector<std::pair<Point, Point>> pairs;
  if (!a.phi1.empty()) {
    const FactorState f1{load_state(a.phi1), "phi1"}, f2{load_state(a.phi2), "phi2"};
    const FactorState h1{load_state(a.psi1), "psi1"}, h2{load_state(a.psi2), "psi2"};
    pairs.emplace_back(combine(f1, f2), combine(h1, h2));
  } else if (a.random > 0) {
    for (int k = 0; k < a.random; ++k) {
      auto draw = [&](const sd_triple* t, std::uint64_t salt) {
        sd_state* s = nullptr;
        check(sd_state_random(t, g.opts.seed * 1000003ULL + 4 * k + salt, &s));
        return FactorState{StatePtr(s), "random" + std::to_string(k) + (salt % 2 ? "b" : "a")};
      };
      pairs.emplace_back(combine(draw(left.get(), 0), draw(right.get(), 1)),
                         combine(draw(left.get(), 2), draw(right.get(), 3)));
    }
  } else {
    std::vector<FactorState> s1, s2;
    if (a.grid > 0) {
      s1 = grid_states(left.get(), a.grid);
      s2 = grid_states(right.get(), a.grid);
    } else {
      s1 = pure_states(left.get());
      s2 = pure_states(right.get());
    }
    std::vector<std::pair<size_t, size_t>> idx;
    for (size_t i = 0; i < s1.size(); ++i)
      for (size_t j = 0; j < s2.size(); ++j) idx.emplace_back(i, j);
    for (size_t u = 0; u < idx.size(); ++u)
      for (size_t v = u + 1; v < idx.size(); ++v)
        pairs.emplace_back(combine(s1[idx[u].first], s2[idx[u].second]),
                           combine(s1[idx[v].first], s2[idx[v].second]));
  }

  Table table({"left", "right", "phi", "psi", "d1", "d2", "d_product", "d_spectral", "ratio", "verdict"});
  static const char* verdicts[] = {"equality", "strict", "violation"};
  for (const auto& [phi, psi] : pairs) {
    sd_pythagoras_report r{};
    const sd_status s = sd_pythagoras_check(prod.get(), phi.state.get(), psi.state.get(), &g.opts, 1, &r);
    if (s == SD_ERR_NO_CONVERGENCE) {
      std::cerr << "error: " << sd_last_error() << " for " << phi.label << " vs " << psi.label << "\n";
      return kExitNoConvergence;
    }
    check(s);
    if (a.direct) {
      check(sd_d_times(prod.get(), phi.state.get(), psi.state.get(), &g.opts, 1, &r.d_product));
      if (r.d_product > 0.0) r.ratio = r.d_spectral / r.d_product;
    }
    table.add({sd_triple_label(left.get()), sd_triple_label(right.get()), phi.label, psi.label, r.d1, r.d2,
               r.d_product, r.d_spectral, r.ratio, verdicts[r.verdict]});
  }
  Output out(g);
  out.emit(table);
  return 0;
}

struct TransportArgs {
  std::string metric, p, q;
};

int cmd_transport(const Global& g, const TransportArgs& a) {
  sd_metric* raw = nullptr;
  check(sd_metric_load(a.metric.c_str(), &raw));
  const MetricPtr m(raw);
  const int n = sd_metric_size(m.get());
  const std::vector<double> p = parse_list(a.p), q = parse_list(a.q);
  if (static_cast<int>(p.size()) != n || static_cast<int>(q.size()) != n) {
    throw ApiError{SD_ERR_DIMENSION_MISMATCH, "p and q need " + std::to_string(n) + " entries"};
  }
  std::vector<double> cost(static_cast<size_t>(n) * n), plan(cost.size()), da(n), db(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) cost[static_cast<size_t>(i) * n + j] = sd_metric_entry(m.get(), i, j);
  double value = 0, gap = 0;
  check(sd_transport(n, cost.data(), p.data(), q.data(), plan.data(), da.data(), db.data(), &value, &gap));
  Output out(g);
  if (g.fmt() == Format::Json) {
    json j;
    j["value"] = value;
    j["gap"] = gap;
    json rows = json::array();
    for (int i = 0; i < n; ++i) rows.push_back(std::vector<double>(plan.begin() + i * n, plan.begin() + (i + 1) * n));
    j["plan"] = rows;
    j["dual_a"] = da;
    j["dual_b"] = db;
    out.stream() << j.dump(2) << "\n";
    return 0;
  }
  Table table({"quantity", "i", "j", "value"});
  table.add({"value", "", "", value});
  table.add({"gap", "", "", gap});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      table.add({"plan", static_cast<long long>(i), static_cast<long long>(j), plan[static_cast<size_t>(i) * n + j]});
  for (int i = 0; i < n; ++i) table.add({"dual_a", static_cast<long long>(i), "", da[i]});
  for (int j = 0; j < n; ++j) table.add({"dual_b", "", static_cast<long long>(j), db[j]});
  out.emit(table);
  return 0;
}

int cmd_surface(const Global& g, int n) {
  if (n < 2) throw ApiError{SD_ERR_INVALID_ARGUMENT, "surface: --n must be at least 2"};
  Table table({"kind", "t", "s", "x", "y", "z"});
  double xyz[3];
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const double t = -1.0 + 2.0 * i / (n - 1), s = -1.0 + 2.0 * k / (n - 1);
      sd_surface_point(t, s, xyz);
      table.add({"grid", t, s, xyz[0], xyz[1], xyz[2]});
    }
  const double corners[4][2] = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
  for (const auto& c : corners) {
    sd_surface_point(c[0], c[1], xyz);
    table.add({"vertex", c[0], c[1], xyz[0], xyz[1], xyz[2]});
  }
  Output out(g);
  out.emit(table);
  return 0;
}

int cmd_marginal_projection(const Global& g, const std::string& p_arg) {
  const std::vector<double> phi = parse_list(p_arg);
  if (phi.size() != 4) throw ApiError{SD_ERR_DIMENSION_MISMATCH, "marginal-projection: need 4 probabilities"};
  double f[3], ff[3], residual = 0;
  check(sd_marginal_projection(phi.data(), f, ff, &residual));
  Table table({"point", "f1", "f2", "f3"});
  table.add({"phi", f[0], f[1], f[2]});
  table.add({"phi_flat", ff[0], ff[1], ff[2]});
  Output out(g);
  out.emit(table);
  if (residual > 1e-10) {
    std::cerr << "error: first two coordinates differ by " << residual << "\n";
    return kExitFailure;
  }
  return 0;
}

struct BerezinArgs {
  int nodes = 800;
  std::string x, y;
};

std::vector<double> bloch_matrix(const std::vector<double>& x) {
  if (x.size() != 3) throw ApiError{SD_ERR_DIMENSION_MISMATCH, "berezin: Bloch vectors need 3 entries"};
  // (1 + x.sigma)/2 as interleaved complex, row-major.
  return {(1 + x[2]) / 2, 0, x[0] / 2, -x[1] / 2, x[0] / 2, x[1] / 2, (1 - x[2]) / 2, 0};
}

int cmd_berezin(const Global& g, const BerezinArgs& a) {
  sd_berezin* raw = nullptr;
  check(sd_berezin_create(a.nodes, &raw));
  const BerezinPtr b(raw);
  const std::vector<double> x = parse_list(a.x);
  if (x.size() == 3 && (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]) > 1.0 + 1e-12) {
    throw ApiError{SD_ERR_OUT_OF_BALL, "berezin: Bloch vector outside the unit ball"};
  }
  const std::vector<double> rho = bloch_matrix(x);
  Output out(g);
  if (!a.y.empty()) {
    const std::vector<double> tau = bloch_matrix(parse_list(a.y));
    double w = 0;
    check(sd_berezin_cost_distance(b.get(), rho.data(), tau.data(), &w));
    Table table({"nodes", "w"});
    table.add({static_cast<long long>(a.nodes), w});
    out.emit(table);
    return 0;
  }
  const int n = sd_berezin_nodes(b.get());
  std::vector<double> xyz(3 * static_cast<size_t>(n)), sym(2 * static_cast<size_t>(n));
  check(sd_berezin_node_positions(b.get(), xyz.data()));
  check(sd_berezin_symbol(b.get(), rho.data(), sym.data()));
  Table table({"node", "x", "y", "z", "sigma"});
  for (int i = 0; i < n; ++i) table.add({static_cast<long long>(i), xyz[3 * i], xyz[3 * i + 1], xyz[3 * i + 2], sym[2 * i]});
  out.emit(table);
  return 0;
}

struct VerifyArgs {
  std::string suite = "all";
  bool quick = false;
};

int cmd_verify(const Global& g, const VerifyArgs& a) {
  Table table({"criterion", "check", "result", "measured", "threshold", "samples", "seconds", "detail"});
  struct Ctx {
    Table* table;
  } ctx{&table};
  int failed = 0;
  check(sd_verify(
      a.suite.c_str(), &g.opts, a.quick ? 1 : 0,
      [](const sd_check* c, void* user) {
        static_cast<Ctx*>(user)->table->add({static_cast<long long>(c->criterion), c->name,
                                             c->passed ? "pass" : "FAIL", c->measured, c->threshold,
                                             static_cast<long long>(c->samples), c->seconds, c->detail});
      },
      &ctx, &failed));
  Output out(g);
  out.emit(table);
  return failed == 0 ? 0 : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral distances on finite spectral triples"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  sd_options_default(&g.opts);
  app.add_option("--tol", g.opts.tol, "Relative tolerance")->check(CLI::PositiveNumber);
  app.add_option("--max-iter", g.opts.max_iter, "Iteration limit")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.opts.seed, "Random seed");
  app.add_option("--restarts", g.opts.restarts, "Restarts for the supergradient method")->check(CLI::NonNegativeNumber);
  app.add_option("--method", g.method, "Primal solver")->check(CLI::IsMember({"barrier", "supergradient"}));
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"human", "csv", "json"}));
  app.add_option("--out", g.out, "Write output to a file");

  DistArgs dist;
  auto* c_dist = app.add_subcommand("dist", "Spectral distance between two states");
  c_dist->add_option("--triple", dist.triple, "Triple file or inline JSON")->required();
  c_dist->add_option("--phi", dist.phi, "First state")->required();
  c_dist->add_option("--psi", dist.psi, "Second state")->required();
  c_dist->add_flag("--dual", dist.dual, "Use the density-matrix formula");

  PythagorasArgs py;
  auto* c_py = app.add_subcommand("pythagoras", "Compare product distances with the product metric");
  c_py->add_option("--left", py.left, "Left (even) triple")->required();
  c_py->add_option("--right", py.right, "Right triple")->required();
  auto* o_grid = c_py->add_option("--grid", py.grid, "Grid of n diagonal states per factor");
  auto* o_pure = c_py->add_flag("--pure", py.pure, "All pairs of pure product states");
  auto* o_rand = c_py->add_option("--random", py.random, "Number of random product-state pairs");
  auto* o_phi1 = c_py->add_option("--phi1", py.phi1, "Explicit left factor of phi");
  c_py->add_option("--phi2", py.phi2, "Explicit right factor of phi")->needs(o_phi1);
  c_py->add_option("--psi1", py.psi1, "Explicit left factor of psi")->needs(o_phi1);
  c_py->add_option("--psi2", py.psi2, "Explicit right factor of psi")->needs(o_phi1);
  o_grid->excludes(o_pure)->excludes(o_rand)->excludes(o_phi1);
  o_pure->excludes(o_rand)->excludes(o_phi1);
  o_rand->excludes(o_phi1);
  c_py->add_flag("--direct", py.direct, "Report the product metric from the direct supremum");

  TransportArgs tr;
  auto* c_tr = app.add_subcommand("transport", "Optimal transport plan on a metric space");
  c_tr->add_option("--metric", tr.metric, "Metric file or inline JSON")->required();
  c_tr->add_option("--p", tr.p, "Source distribution, comma separated")->required();
  c_tr->add_option("--q", tr.q, "Target distribution, comma separated")->required();

  int surface_n = 21;
  auto* c_sf = app.add_subcommand("surface", "Sample the product-state surface in the tetrahedron");
  c_sf->add_option("--n", surface_n, "Grid points per axis");

  std::string mp;
  auto* c_mp = app.add_subcommand("marginal-projection", "Project a two-bit distribution onto its marginals");
  c_mp->add_option("--p", mp, "Four probabilities, comma separated")->required();

  BerezinArgs bz;
  auto* c_bz = app.add_subcommand("berezin", "Berezin symbol samples or cost distance of qubit states");
  c_bz->add_option("--n", bz.nodes, "Sphere nodes")->check(CLI::PositiveNumber);
  c_bz->add_option("--x", bz.x, "Bloch vector, comma separated")->required();
  c_bz->add_option("--y", bz.y, "Second Bloch vector; prints the cost distance");

  VerifyArgs vf;
  auto* c_vf = app.add_subcommand("verify", "Run acceptance suites");
  c_vf->add_option("suite", vf.suite, "oracles, transport, pythagoras, berezin or all");
  c_vf->add_flag("--quick", vf.quick, "Reduced sample counts");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitFailure;
  }
  g.opts.method = g.method == "supergradient" ? SD_METHOD_SUPERGRADIENT : SD_METHOD_BARRIER;

  try {
    if (*c_dist) return cmd_dist(g, dist);
    if (*c_py) return cmd_pythagoras(g, py);
    if (*c_tr) return cmd_transport(g, tr);
    if (*c_sf) return cmd_surface(g, surface_n);
    if (*c_mp) return cmd_marginal_projection(g, mp);
    if (*c_bz) return cmd_berezin(g, bz);
    if (*c_vf) return cmd_verify(g, vf);
  } catch (const ApiError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.status == SD_ERR_NO_CONVERGENCE ? kExitNoConvergence : kExitFailure;
  }
  return kExitFailure;
}
