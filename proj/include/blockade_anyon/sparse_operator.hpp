#pragma once

// Real sparse operators over a constrained sector basis, stored as CSR with rows and
// columns in canonical (sorted) order.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "basis.hpp"
#include "errors.hpp"
#include "parallel.hpp"

namespace blockade_anyon {

inline constexpr double kDropTolerance = 1e-14;
inline constexpr double kHermitianTolerance = 1e-12;

struct Triplet {
  std::size_t row;
  std::size_t col;
  double value;
};

class SparseOperator {
 public:
  SparseOperator() = default;

  // Duplicates are summed; entries with |value| <= kDropTolerance are dropped.
  static SparseOperator from_triplets(SectorPtr sector, std::vector<Triplet> entries) {
    const std::size_t d = sector->dim();
    for (const auto& t : entries) {
      if (t.row >= d || t.col >= d)
        throw ArgumentError("operator entry outside sector dimension " + std::to_string(d));
    }
    std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
      return std::tie(a.row, a.col) < std::tie(b.row, b.col);
    });
    SparseOperator op(std::move(sector));
    op.row_ptr_.assign(d + 1, 0);
    for (std::size_t k = 0; k < entries.size();) {
      const std::size_t r = entries[k].row;
      const std::size_t c = entries[k].col;
      double v = 0.0;
      while (k < entries.size() && entries[k].row == r && entries[k].col == c) v += entries[k++].value;
      if (std::abs(v) > kDropTolerance) {
        op.cols_.push_back(c);
        op.vals_.push_back(v);
        ++op.row_ptr_[r + 1];
      }
    }
    for (std::size_t r = 0; r < d; ++r) op.row_ptr_[r + 1] += op.row_ptr_[r];
    op.refresh_hermitian();
    return op;
  }

  static SparseOperator from_dense(SectorPtr sector, const Eigen::MatrixXd& m) {
    const std::size_t d = sector->dim();
    if (static_cast<std::size_t>(m.rows()) != d || static_cast<std::size_t>(m.cols()) != d)
      throw ArgumentError("dense matrix shape does not match sector dimension");
    SparseOperator op(std::move(sector));
    op.row_ptr_.assign(d + 1, 0);
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t c = 0; c < d; ++c) {
        const double v = m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
        if (std::abs(v) > kDropTolerance) {
          op.cols_.push_back(c);
          op.vals_.push_back(v);
        }
      }
      op.row_ptr_[r + 1] = op.cols_.size();
    }
    op.refresh_hermitian();
    return op;
  }

  static SparseOperator diagonal(SectorPtr sector, std::span<const double> diag) {
    std::vector<Triplet> t;
    t.reserve(diag.size());
    for (std::size_t k = 0; k < diag.size(); ++k) t.push_back({k, k, diag[k]});
    return from_triplets(std::move(sector), std::move(t));
  }

  const SectorPtr& sector() const noexcept { return sector_; }
  std::size_t dim() const noexcept { return sector_ ? sector_->dim() : 0; }
  std::size_t nnz() const noexcept { return vals_.size(); }
  bool hermitian() const noexcept { return hermitian_; }

  std::span<const std::size_t> row_ptr() const noexcept { return row_ptr_; }
  std::span<const std::size_t> cols() const noexcept { return cols_; }
  std::span<const double> values() const noexcept { return vals_; }

  double at(std::size_t r, std::size_t c) const {
    const auto first = cols_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[r]);
    const auto last = cols_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[r + 1]);
    const auto it = std::lower_bound(first, last, c);
    if (it == last || *it != c) return 0.0;
    return vals_[static_cast<std::size_t>(it - cols_.begin())];
  }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t r = 0; r + 1 < row_ptr_.size(); ++r)
      for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) f(r, cols_[k], vals_[k]);
  }

  std::vector<Triplet> triplets() const {
    std::vector<Triplet> out;
    out.reserve(nnz());
    for_each([&](std::size_t r, std::size_t c, double v) { out.push_back({r, c, v}); });
    return out;
  }

  Eigen::MatrixXd to_dense() const {
    const auto d = static_cast<Eigen::Index>(dim());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
    for_each([&](std::size_t r, std::size_t c, double v) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v;
    });
    return m;
  }

  // out = A * in. Rows are independent, so the result does not depend on threading.
  template <typename Scalar>
  void apply(std::span<const Scalar> in, std::span<Scalar> out) const {
    if (in.size() != dim() || out.size() != dim())
      throw ArgumentError("matvec vector length does not match operator dimension");
    parallel_for(0, dim(), [&](std::size_t lo, std::size_t hi) {
      for (std::size_t r = lo; r < hi; ++r) {
        Scalar acc{};
        for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) acc += vals_[k] * in[cols_[k]];
        out[r] = acc;
      }
    });
  }

  template <typename Derived>
  auto operator*(const Eigen::MatrixBase<Derived>& v) const {
    using Scalar = typename Derived::Scalar;
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> in = v;
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> out(in.size());
    apply<Scalar>(std::span<const Scalar>(in.data(), static_cast<std::size_t>(in.size())),
                  std::span<Scalar>(out.data(), static_cast<std::size_t>(out.size())));
    return out;
  }

  bool structurally_equal(const SparseOperator& o) const noexcept {
    return sector_->same_as(*o.sector_) && row_ptr_ == o.row_ptr_ && cols_ == o.cols_ &&
           vals_ == o.vals_;
  }

 private:
  explicit SparseOperator(SectorPtr sector) : sector_(std::move(sector)) {}

  void refresh_hermitian() {
    hermitian_ = true;
    for_each([&](std::size_t r, std::size_t c, double v) {
      if (hermitian_ && r != c && std::abs(v - at(c, r)) > kHermitianTolerance) hermitian_ = false;
    });
  }

  SectorPtr sector_;
  std::vector<std::size_t> row_ptr_;
  std::vector<std::size_t> cols_;
  std::vector<double> vals_;
  bool hermitian_ = true;
};

// ---- algebra ---------------------------------------------------------------------

inline void require_same_sector(const SparseOperator& a, const SparseOperator& b) {
  if (!a.sector() || !b.sector() || !a.sector()->same_as(*b.sector()))
    throw DomainError("operators live on different sectors");
}

inline SparseOperator identity(const SectorPtr& sector) {
  std::vector<double> ones(sector->dim(), 1.0);
  return SparseOperator::diagonal(sector, ones);
}

inline SparseOperator zero(const SectorPtr& sector) {
  return SparseOperator::from_triplets(sector, {});
}

inline SparseOperator scale(const SparseOperator& a, double s) {
  auto t = a.triplets();
  for (auto& e : t) e.value *= s;
  return SparseOperator::from_triplets(a.sector(), std::move(t));
}

// alpha*a + beta*b
inline SparseOperator add(const SparseOperator& a, const SparseOperator& b, double alpha = 1.0,
                          double beta = 1.0) {
  require_same_sector(a, b);
  std::vector<Triplet> t;
  t.reserve(a.nnz() + b.nnz());
  a.for_each([&](std::size_t r, std::size_t c, double v) { t.push_back({r, c, alpha * v}); });
  b.for_each([&](std::size_t r, std::size_t c, double v) { t.push_back({r, c, beta * v}); });
  return SparseOperator::from_triplets(a.sector(), std::move(t));
}

inline SparseOperator multiply(const SparseOperator& a, const SparseOperator& b) {
  require_same_sector(a, b);
  const std::size_t d = a.dim();
  std::vector<std::vector<Triplet>> rows(d);
  const auto arp = a.row_ptr();
  const auto ac = a.cols();
  const auto av = a.values();
  const auto brp = b.row_ptr();
  const auto bc = b.cols();
  const auto bv = b.values();
  parallel_for(0, d, [&](std::size_t lo, std::size_t hi) {
    std::vector<double> acc(d, 0.0);
    std::vector<char> used(d, 0);
    std::vector<std::size_t> touched;
    for (std::size_t r = lo; r < hi; ++r) {
      touched.clear();
      for (std::size_t k = arp[r]; k < arp[r + 1]; ++k) {
        const std::size_t mid = ac[k];
        for (std::size_t q = brp[mid]; q < brp[mid + 1]; ++q) {
          const std::size_t c = bc[q];
          if (!used[c]) {
            used[c] = 1;
            touched.push_back(c);
          }
          acc[c] += av[k] * bv[q];
        }
      }
      std::sort(touched.begin(), touched.end());
      for (std::size_t c : touched) {
        rows[r].push_back({r, c, acc[c]});
        acc[c] = 0.0;
        used[c] = 0;
      }
    }
  }, 64);
  std::vector<Triplet> t;
  for (auto& row : rows) t.insert(t.end(), row.begin(), row.end());
  return SparseOperator::from_triplets(a.sector(), std::move(t));
}

inline SparseOperator adjoint(const SparseOperator& a) {
  auto t = a.triplets();
  for (auto& e : t) std::swap(e.row, e.col);
  return SparseOperator::from_triplets(a.sector(), std::move(t));
}

inline SparseOperator commutator(const SparseOperator& a, const SparseOperator& b) {
  return add(multiply(a, b), multiply(b, a), 1.0, -1.0);
}

inline double frobenius_norm(const SparseOperator& a) {
  double s = 0.0;
  for (double v : a.values()) s += v * v;
  return std::sqrt(s);
}

inline double trace(const SparseOperator& a) {
  double s = 0.0;
  for (std::size_t r = 0; r < a.dim(); ++r) s += a.at(r, r);
  return s;
}

// Frobenius inner product tr(a^T b).
inline double frobenius_inner(const SparseOperator& a, const SparseOperator& b) {
  require_same_sector(a, b);
  double s = 0.0;
  a.for_each([&](std::size_t r, std::size_t c, double v) { s += v * b.at(r, c); });
  return s;
}

inline double frobenius_distance(const SparseOperator& a, const SparseOperator& b) {
  return frobenius_norm(add(a, b, 1.0, -1.0));
}

// Numerical rank: singular values above 1e-9 * dim.
inline std::size_t rank(const SparseOperator& a) {
  if (a.dim() == 0) return 0;
  const Eigen::BDCSVD<Eigen::MatrixXd> svd(a.to_dense());
  const double tol = 1e-9 * static_cast<double>(a.dim());
  std::size_t r = 0;
  for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k)
    if (svd.singularValues()(k) > tol) ++r;
  return r;
}

inline SparseOperator operator+(const SparseOperator& a, const SparseOperator& b) { return add(a, b); }
inline SparseOperator operator-(const SparseOperator& a, const SparseOperator& b) {
  return add(a, b, 1.0, -1.0);
}
inline SparseOperator operator*(const SparseOperator& a, const SparseOperator& b) {
  return multiply(a, b);
}
inline SparseOperator operator*(double s, const SparseOperator& a) { return scale(a, s); }

}  // namespace blockade_anyon
