#include "semitherm/transfer.hpp"

#include <algorithm>
#include <cmath>

#include "semitherm/errors.hpp"

namespace semitherm {

Transfer::Transfer(ExpandingSystem sys, std::size_t n, Scheme scheme)
    : sys_(std::move(sys)), n_(n), scheme_(scheme) {
  if (n_ < 8) throw ConfigError("grid needs at least 8 nodes");
  const auto k = static_cast<std::size_t>(sys_.alphabet_size());
  stencil_.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    const auto& T = sys_.map(static_cast<int>(i));
    const auto m = static_cast<std::size_t>(T.branches());
    const std::size_t per = scheme_ == Scheme::cubic ? 2 : 1;
    auto& st = stencil_[i];
    st.resize(n_ * m * per);
    for (std::size_t j = 0; j < n_; ++j) {
      const double x = static_cast<double>(j) / static_cast<double>(n_);
      for (std::size_t b = 0; b < m; ++b) {
        const double y = T.inverse(x, static_cast<int>(b));
        const double w = std::exp(sys_.phi(static_cast<int>(i), y));
        const auto h = hat_split(y, n_);
        if (scheme_ == Scheme::linear) {
          st[j * m + b] = {h.left, h.right, w * (1.0 - h.t), w * h.t};
        } else {
          // 4-point Lagrange on nodes left-1 .. left+2
          const double t = h.t;
          const std::size_t l0 = (h.left + n_ - 1) % n_, l3 = (h.right + 1) % n_;
          st[(j * m + b) * 2] = {l0, h.left, -w * t * (t - 1.0) * (t - 2.0) / 6.0,
                                 w * (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0};
          st[(j * m + b) * 2 + 1] = {h.right, l3, -w * (t + 1.0) * t * (t - 2.0) / 2.0,
                                     w * (t + 1.0) * t * (t - 1.0) / 6.0};
        }
      }
    }
  }
}

GridFunction Transfer::apply_letter(int i, const GridFunction& f) const {
  if (f.size() != n_) throw ConfigError("grid size mismatch");
  const auto& st = stencil(i);
  const std::size_t m = st.size() / n_;
  const auto& v = f.values();
  std::vector<double> out(n_);
  for (std::size_t j = 0; j < n_; ++j) {
    double s = 0.0;
    const Entry* e = &st[j * m];
    for (std::size_t b = 0; b < m; ++b) s += e[b].wl * v[e[b].left] + e[b].wr * v[e[b].right];
    out[j] = s;
  }
  return GridFunction(std::move(out));
}

GridFunction Transfer::apply_word(const Word& v, const GridFunction& f) const {
  GridFunction g = f;
  for (int l : v.letters()) g = apply_letter(l, g);
  return g;
}

ScaledFunction Transfer::apply_word_scaled(const Word& v, const ScaledFunction& f) const {
  ScaledFunction r = f;
  for (int l : v.letters()) {
    r.f = apply_letter(l, r.f);
    const double s = r.f.sup_norm();
    if (s == 0.0) break;
    r.f = r.f * (1.0 / s);
    r.log_scale += std::log(s);
  }
  return r;
}

ScaledFunction Transfer::apply_word_scaled(const Word& v, const GridFunction& f) const {
  const double s = f.sup_norm();
  if (s == 0.0) return {f, 0.0};
  return apply_word_scaled(v, ScaledFunction{f * (1.0 / s), std::log(s)});
}

GridFunction Transfer::one_image(const Word& u) const {
  return apply_word_scaled(u, GridFunction::constant(n_, 1.0)).f;
}

GridFunction Transfer::quotient_with_weight(const GridFunction& g, const Word& v,
                                            const GridFunction& f) const {
  GridFunction num = f * g;
  GridFunction den = g;
  for (int l : v.letters()) {
    num = apply_letter(l, num);
    den = apply_letter(l, den);
    const double s = den.max();
    if (!(s > 0.0)) throw NumericalGuard("normaliser L_{uv}(1) is not positive");
    num = num * (1.0 / s);
    den = den * (1.0 / s);
  }
  std::vector<double> r(n_);
  for (std::size_t j = 0; j < n_; ++j) {
    if (!(den[j] > 0.0)) throw NumericalGuard("normaliser L_{uv}(1) is not positive");
    r[j] = num[j] / den[j];
  }
  return GridFunction(std::move(r));
}

GridFunction Transfer::normalized_quotient(const Word& u, const Word& v,
                                           const GridFunction& f) const {
  return quotient_with_weight(one_image(u), v, f);
}

std::vector<double> Transfer::transpose_letter(int i, const std::vector<double>& mu) const {
  const auto& st = stencil(i);
  const std::size_t m = st.size() / n_;
  std::vector<double> out(n_, 0.0);
  for (std::size_t j = 0; j < n_; ++j) {
    const double q = mu[j];
    if (q == 0.0) continue;
    const Entry* e = &st[j * m];
    for (std::size_t b = 0; b < m; ++b) {
      out[e[b].left] += e[b].wl * q;
      out[e[b].right] += e[b].wr * q;
    }
  }
  return out;
}

GridMeasure Transfer::dual_letter(const GridFunction& g, int i, const GridMeasure& mu) const {
  const GridFunction mg = apply_letter(i, g);
  std::vector<double> q(n_);
  for (std::size_t j = 0; j < n_; ++j) {
    if (mu[j] == 0.0) {
      q[j] = 0.0;
      continue;
    }
    if (!(mg[j] > 0.0)) throw NumericalGuard("normaliser L_{uv}(1) is not positive");
    q[j] = mu[j] / mg[j];
  }
  std::vector<double> back = transpose_letter(i, q);
  for (std::size_t j = 0; j < n_; ++j) back[j] *= g[j];
  return GridMeasure(std::move(back));
}

GridMeasure Transfer::dual_quotient_with_weight(const GridFunction& g, const Word& v,
                                                const GridMeasure& mu) const {
  // (P_u^{v1...vn})^* = (P_u^{v1})^* o ... o (P_{u v1..v(n-1)}^{vn})^*
  std::vector<GridFunction> prefix;
  prefix.reserve(v.size());
  GridFunction w = g * (1.0 / g.max());
  for (std::size_t k = 0; k < v.size(); ++k) {
    prefix.push_back(w);
    w = apply_letter(v[k], w);
    w = w * (1.0 / w.max());
  }
  GridMeasure r = mu;
  for (std::size_t k = v.size(); k-- > 0;) r = dual_letter(prefix[k], v[k], r);
  return r;
}

GridMeasure Transfer::dual_quotient(const Word& u, const Word& v, const GridMeasure& mu) const {
  return dual_quotient_with_weight(one_image(u), v, mu);
}

double Transfer::comparability_ratio(const Word& v) const {
  const GridFunction g = one_image(v);
  return g.max() / g.min();
}

Eigen::SparseMatrix<double, Eigen::RowMajor> Transfer::sparse_matrix(int i) const {
  const auto& st = stencil(i);
  const std::size_t m = st.size() / n_;
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(2 * st.size());
  for (std::size_t j = 0; j < n_; ++j)
    for (std::size_t b = 0; b < m; ++b) {
      const Entry& e = st[j * m + b];
      trip.emplace_back(static_cast<int>(j), static_cast<int>(e.left), e.wl);
      trip.emplace_back(static_cast<int>(j), static_cast<int>(e.right), e.wr);
    }
  const auto sz = static_cast<Eigen::Index>(n_);
  Eigen::SparseMatrix<double, Eigen::RowMajor> M(sz, sz);
  M.setFromTriplets(trip.begin(), trip.end());
  return M;
}

Eigen::MatrixXd Transfer::dense_matrix(int i) const { return Eigen::MatrixXd(sparse_matrix(i)); }

HolderSeminorms holder_seminorms(const MetricConstants& mc, const GridFunction& f) {
  HolderSeminorms h;
  const std::size_t n = f.size();
  h.sup_norm = f.sup_norm();
  h.oscillation = f.oscillation();
  const double rloc = mc.truncation_radius();
  const std::size_t stride = n <= 512 ? 1 : (n + 511) / 512;
  std::vector<double> dpow(n / 2 + 1, 0.0);
  for (std::size_t k = 1; k <= n / 2; ++k)
    dpow[k] = std::pow(static_cast<double>(k) / static_cast<double>(n), mc.alpha);
  const auto& v = f.values();
  for (std::size_t j = 0; j < n; j += stride) {
    for (std::size_t k = 1; k <= n / 2; ++k) {
      const double q = std::fabs(v[j] - v[(j + k) % n]) / dpow[k];
      h.D_alpha = std::max(h.D_alpha, q);
      if (static_cast<double>(k) / static_cast<double>(n) < rloc) h.D_alpha_loc = std::max(h.D_alpha_loc, q);
    }
  }
  h.D_bar = std::max(h.oscillation, h.D_alpha_loc / mc.Delta);
  return h;
}

}  // namespace semitherm
