#include "specdist/transport.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "specdist/error.hpp"

namespace specdist {

namespace {

// Flow value x + d * eps for an infinitesimal eps > 0, compared lexicographically.
struct Lex {
  double x = 0.0;
  double d = 0.0;
};

constexpr double kLexTol = 1e-13;

bool lex_less(const Lex& a, const Lex& b) {
  if (std::abs(a.x - b.x) > kLexTol) return a.x < b.x;
  return a.d < b.d;
}

struct Arc {
  int row;
  int col;
  Lex flow;
};

class TransportSimplex {
 public:
  TransportSimplex(const RMatrix& cost, const RVector& p, const RVector& q)
      : c_(cost), m_(static_cast<int>(cost.rows())), n_(static_cast<int>(cost.cols())), p_(p), q_(q) {}

  void run() {
    initial_basis();
    potentials();
    const long total = static_cast<long>(m_) * n_;
    const long block = std::max<long>(32, static_cast<long>(std::sqrt(static_cast<double>(total))));
    double cmax = 0.0;
    for (int i = 0; i < m_; ++i)
      for (int j = 0; j < n_; ++j) cmax = std::max(cmax, std::abs(c_(i, j)));
    const double eps = 1e-12 * std::max(1.0, cmax);
    long pos = 0;
    const long pivot_cap = 100 * total + 1000;
    for (;;) {
      long scanned = 0, best = -1;
      double best_rc = -eps;
      while (scanned < total) {
        const long stop = std::min(total, scanned + block);
        for (; scanned < stop; ++scanned) {
          const long cell = pos;
          pos = (pos + 1) % total;
          const int i = static_cast<int>(cell / n_), j = static_cast<int>(cell % n_);
          const double rc = c_(i, j) - u_(i) - v_(j);
          if (rc < best_rc) {
            best_rc = rc;
            best = cell;
          }
        }
        if (best >= 0) break;
      }
      if (best < 0) break;
      pivot(static_cast<int>(best / n_), static_cast<int>(best % n_));
      if (++pivots_ > pivot_cap) throw Error(ErrorCode::NoConvergence, "kantorovich: pivot limit reached");
      potentials();
    }
    exact_flows();
  }

  const std::vector<Arc>& arcs() const { return arcs_; }
  const RVector& u() const { return u_; }
  const RVector& v() const { return v_; }
  const std::vector<double>& flows() const { return exact_; }
  int pivots() const { return pivots_; }

 private:
  const RMatrix& c_;
  int m_, n_;
  RVector p_, q_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> adj_;  // node -> arc ids; rows 0..m-1, cols m..m+n-1
  RVector u_, v_;
  std::vector<int> parent_arc_, depth_;
  std::vector<double> exact_;
  int pivots_ = 0;

  int other(const Arc& a, int node) const { return node < m_ ? m_ + a.col : a.row; }

  void initial_basis() {
    // Northwest corner on supplies p_i + eps and demands q_j (+ m eps on the last).
    std::vector<Lex> ra(m_), rb(n_);
    for (int i = 0; i < m_; ++i) ra[i] = {p_(i), 1.0};
    for (int j = 0; j < n_; ++j) rb[j] = {q_(j), j == n_ - 1 ? double(m_) : 0.0};
    adj_.assign(m_ + n_, {});
    int i = 0, j = 0;
    for (;;) {
      if (i == m_ - 1 && j == n_ - 1) {
        add_arc({i, j, ra[i]});
        break;
      }
      bool row_done;
      if (i == m_ - 1)
        row_done = false;
      else if (j == n_ - 1)
        row_done = true;
      else
        row_done = lex_less(ra[i], rb[j]);
      const Lex take = row_done ? ra[i] : rb[j];
      add_arc({i, j, take});
      ra[i] = {ra[i].x - take.x, ra[i].d - take.d};
      rb[j] = {rb[j].x - take.x, rb[j].d - take.d};
      if (row_done)
        ++i;
      else
        ++j;
    }
  }

  void add_arc(const Arc& a) {
    arcs_.push_back(a);
    const int id = static_cast<int>(arcs_.size()) - 1;
    adj_[a.row].push_back(id);
    adj_[m_ + a.col].push_back(id);
  }

  void potentials() {
    const int nodes = m_ + n_;
    u_.setZero(m_);
    v_.setZero(n_);
    parent_arc_.assign(nodes, -1);
    depth_.assign(nodes, -1);
    std::deque<int> queue{0};
    depth_[0] = 0;
    while (!queue.empty()) {
      const int node = queue.front();
      queue.pop_front();
      for (int id : adj_[node]) {
        const Arc& a = arcs_[id];
        const int nb = other(a, node);
        if (depth_[nb] >= 0) continue;
        depth_[nb] = depth_[node] + 1;
        parent_arc_[nb] = id;
        if (nb >= m_)
          v_(a.col) = c_(a.row, a.col) - u_(a.row);
        else
          u_(a.row) = c_(a.row, a.col) - v_(a.col);
        queue.push_back(nb);
      }
    }
  }

  void pivot(int i, int j) {
    // Path from column j and from row i up to their common ancestor.
    std::vector<int> from_col, from_row;
    int a = m_ + j, b = i;
    while (a != b) {
      if (depth_[a] >= depth_[b]) {
        const int id = parent_arc_[a];
        from_col.push_back(id);
        a = other(arcs_[id], a);
      } else {
        const int id = parent_arc_[b];
        from_row.push_back(id);
        b = other(arcs_[id], b);
      }
    }
    std::vector<int> path = from_col;
    path.insert(path.end(), from_row.rbegin(), from_row.rend());
    // Signs alternate -, +, -, ... starting next to column j.
    int leave = -1;
    for (size_t k = 0; k < path.size(); k += 2) {
      if (leave < 0 || lex_less(arcs_[path[k]].flow, arcs_[leave].flow)) leave = path[k];
    }
    const Lex theta = arcs_[leave].flow;
    for (size_t k = 0; k < path.size(); ++k) {
      Lex& f = arcs_[path[k]].flow;
      const double s = (k % 2 == 0) ? -1.0 : 1.0;
      f = {f.x + s * theta.x, f.d + s * theta.d};
    }
    // Reuse the leaving slot for the entering arc.
    Arc& old = arcs_[leave];
    auto drop = [&](int node) {
      auto& v = adj_[node];
      v.erase(std::find(v.begin(), v.end(), leave));
    };
    drop(old.row);
    drop(m_ + old.col);
    old = {i, j, theta};
    adj_[i].push_back(leave);
    adj_[m_ + j].push_back(leave);
  }

  void exact_flows() {
    // Leaf elimination on the basis tree with the unperturbed masses.
    const int nodes = m_ + n_;
    std::vector<double> rem(nodes);
    for (int i = 0; i < m_; ++i) rem[i] = p_(i);
    for (int j = 0; j < n_; ++j) rem[m_ + j] = q_(j);
    std::vector<int> degree(nodes);
    for (int k = 0; k < nodes; ++k) degree[k] = static_cast<int>(adj_[k].size());
    std::vector<char> done(arcs_.size(), 0);
    exact_.assign(arcs_.size(), 0.0);
    std::deque<int> leaves;
    for (int k = 0; k < nodes; ++k)
      if (degree[k] == 1) leaves.push_back(k);
    while (!leaves.empty()) {
      const int node = leaves.front();
      leaves.pop_front();
      if (degree[node] != 1) continue;
      int id = -1;
      for (int e : adj_[node])
        if (!done[e]) id = e;
      if (id < 0) continue;
      done[id] = 1;
      const int nb = other(arcs_[id], node);
      const double f = std::max(0.0, rem[node]);
      exact_[id] = f;
      rem[node] -= f;
      rem[nb] -= f;
      --degree[node];
      if (--degree[nb] == 1) leaves.push_back(nb);
    }
  }
};

}  // namespace

void validate_probability(const RVector& p) {
  if (p.size() < 1) throw Error(ErrorCode::NotProbability, "probability vector is empty");
  for (int k = 0; k < p.size(); ++k)
    if (!(p(k) >= 0.0)) throw Error(ErrorCode::NotProbability, "probability vector has a negative entry");
  if (std::abs(p.sum() - 1.0) > 1e-10) throw Error(ErrorCode::NotProbability, "probability vector does not sum to 1");
}

TransportPlan kantorovich(const RMatrix& c, const RVector& p, const RVector& q) {
  if (c.rows() != p.size() || c.cols() != q.size()) {
    throw Error(ErrorCode::DimensionMismatch, "kantorovich: cost shape does not match the marginals");
  }
  validate_probability(p);
  validate_probability(q);
  const int m = static_cast<int>(c.rows()), n = static_cast<int>(c.cols());
  double cmax = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      if (std::isnan(c(i, j)) || c(i, j) < 0.0) throw Error(ErrorCode::InvalidArgument, "kantorovich: costs must be >= 0");
      if (std::isfinite(c(i, j))) cmax = std::max(cmax, c(i, j));
    }
  const double big = (cmax + 1.0) * 10.0 * (m + n);
  RMatrix cost = c;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j)
      if (!std::isfinite(cost(i, j))) cost(i, j) = big;
  const RVector qn = q * (p.sum() / q.sum());

  TransportSimplex solver(cost, p, qn);
  solver.run();

  TransportPlan out;
  out.flow = RMatrix::Zero(m, n);
  const auto& arcs = solver.arcs();
  for (size_t k = 0; k < arcs.size(); ++k) out.flow(arcs[k].row, arcs[k].col) += solver.flows()[k];
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j)
      if (!std::isfinite(c(i, j)) && out.flow(i, j) > 1e-12) {
        throw Error(ErrorCode::Infeasible, "kantorovich: infinite costs separate the supports of the marginals");
      }
  out.value = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j)
      if (out.flow(i, j) != 0.0) out.value += c(i, j) * out.flow(i, j);
  out.dual_a = solver.u();
  out.dual_b = solver.v();
  out.gap = out.value - (p.dot(out.dual_a) + q.dot(out.dual_b));
  out.plan = RMatrix::Zero(m, n);
  for (int i = 0; i < m; ++i) {
    if (p(i) > 0.0)
      out.plan.row(i) = out.flow.row(i) / p(i);
    else
      out.plan.row(i).setConstant(1.0 / n);
  }
  out.pivots = solver.pivots();
  return out;
}

double commutative_distance(const MetricSpace& x, const RVector& p, const RVector& q) {
  validate_metric(x);
  try {
    return kantorovich(x.g, p, q).value;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Infeasible) return std::numeric_limits<double>::infinity();
    throw;
  }
}

}  // namespace specdist
