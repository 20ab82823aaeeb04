#ifndef PLCERT_MATRIX_HPP
#define PLCERT_MATRIX_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace plcert {

/// Dense row-major matrix over a field F.
template <class F>
class Matrix {
 public:
  using Elem = typename F::Elem;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const Elem& fill)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix zeros(const F& f, std::size_t rows, std::size_t cols) {
    return Matrix(rows, cols, f.zero());
  }
  static Matrix identity(const F& f, std::size_t n) {
    Matrix m(n, n, f.zero());
    for (std::size_t i = 0; i < n; ++i) m(i, i) = f.one();
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Elem& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Elem& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  void append_row(const std::vector<Elem>& row) {
    if (rows_ == 0 && cols_ == 0) cols_ = row.size();
    if (row.size() != cols_) throw std::invalid_argument("Matrix::append_row: width mismatch");
    data_.insert(data_.end(), row.begin(), row.end());
    ++rows_;
  }
  std::vector<Elem> row(std::size_t i) const {
    return std::vector<Elem>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }
  void truncate_rows(std::size_t n) {
    rows_ = n;
    data_.resize(n * cols_);
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Elem> data_;
};

namespace linalg {

/// In-place reduced row echelon form; returns the pivot columns. Rows past
/// the rank are zero afterwards.
template <class F>
std::vector<std::size_t> rref(const F& f, Matrix<F>& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  const std::size_t R = m.rows(), C = m.cols();
  for (std::size_t c = 0; c < C && r < R; ++c) {
    std::size_t piv = R;
    for (std::size_t i = r; i < R; ++i)
      if (!f.is_zero(m(i, c))) {
        piv = i;
        break;
      }
    if (piv == R) continue;
    if (piv != r)
      for (std::size_t j = 0; j < C; ++j) std::swap(m(piv, j), m(r, j));
    const auto inv = f.inv(m(r, c));
    for (std::size_t j = c; j < C; ++j) m(r, j) = f.mul(m(r, j), inv);
    for (std::size_t i = 0; i < R; ++i) {
      if (i == r || f.is_zero(m(i, c))) continue;
      const auto factor = m(i, c);
      for (std::size_t j = c; j < C; ++j) {
        if (f.is_zero(m(r, j))) continue;
        m(i, j) = f.sub(m(i, j), f.mul(factor, m(r, j)));
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class F>
std::size_t rank(const F& f, Matrix<F> m) {
  return rref(f, m).size();
}

/// Basis of the right kernel {v : M v = 0}.
template <class F>
std::vector<std::vector<typename F::Elem>> kernel(const F& f, Matrix<F> m) {
  const std::size_t C = m.cols();
  auto pivots = rref(f, m);
  std::vector<bool> is_pivot(C, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<typename F::Elem>> basis;
  for (std::size_t free = 0; free < C; ++free) {
    if (is_pivot[free]) continue;
    std::vector<typename F::Elem> v(C, f.zero());
    v[free] = f.one();
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = f.neg(m(r, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class F>
std::vector<typename F::Elem> mat_vec(const F& f, const Matrix<F>& m,
                                      const std::vector<typename F::Elem>& v) {
  std::vector<typename F::Elem> out(m.rows(), f.zero());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!f.is_zero(v[j])) out[i] = f.add(out[i], f.mul(m(i, j), v[j]));
  return out;
}

/// Some solution of A x = b, or nullopt when the system is inconsistent.
template <class F>
std::optional<std::vector<typename F::Elem>> solve(const F& f, const Matrix<F>& a,
                                                   const std::vector<typename F::Elem>& b) {
  const std::size_t R = a.rows(), C = a.cols();
  Matrix<F> m(R, C + 1, f.zero());
  for (std::size_t i = 0; i < R; ++i) {
    for (std::size_t j = 0; j < C; ++j) m(i, j) = a(i, j);
    m(i, C) = b[i];
  }
  auto pivots = rref(f, m);
  if (!pivots.empty() && pivots.back() == C) return std::nullopt;
  std::vector<typename F::Elem> x(C, f.zero());
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = m(r, C);
  return x;
}

/// Echelonized span of a set of vectors, supporting reduction of further
/// vectors to normal form (coordinates outside the pivot columns).
template <class F>
class Echelon {
 public:
  using Elem = typename F::Elem;
  Echelon(const F& f, Matrix<F> rows) : f_(&f), m_(std::move(rows)) {
    pivots_ = rref(f, m_);
    m_.truncate_rows(pivots_.size());
  }
  std::size_t rank() const { return pivots_.size(); }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Reduce v modulo the span (in place).
  void reduce(std::vector<Elem>& v) const {
    for (std::size_t r = 0; r < pivots_.size(); ++r) {
      const auto c = pivots_[r];
      if (f_->is_zero(v[c])) continue;
      const auto factor = v[c];
      for (std::size_t j = c; j < m_.cols(); ++j)
        if (!f_->is_zero(m_(r, j))) v[j] = f_->sub(v[j], f_->mul(factor, m_(r, j)));
    }
  }
  bool contains(std::vector<Elem> v) const {
    reduce(v);
    for (const auto& x : v)
      if (!f_->is_zero(x)) return false;
    return true;
  }

 private:
  const F* f_;
  Matrix<F> m_;
  std::vector<std::size_t> pivots_;
};

}  // namespace linalg
}  // namespace plcert

#endif  // PLCERT_MATRIX_HPP
