#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "secrecy/errors.hpp"

namespace secrecy {

using cplx = std::complex<double>;

/// Dense row-major complex matrix. Values are immutable by convention once
/// built (the library always constructs fresh results) and safe to share
/// across threads.
class ComplexMatrix {
 public:
  ComplexMatrix() : rows_(0), cols_(0) {}

  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols, cplx{0.0, 0.0}) {
    if (rows == 0 || cols == 0) throw config_error("ComplexMatrix: zero dimension");
  }

  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (rows == 0 || cols == 0) throw config_error("ComplexMatrix: zero dimension");
    if (entries_.size() != rows * cols)
      throw config_error("ComplexMatrix: entry count does not match dimensions");
  }

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix diagonal(std::initializer_list<double> d) {
    ComplexMatrix m(d.size(), d.size());
    std::size_t i = 0;
    for (double v : d) m(i, i) = v, ++i;
    return m;
  }

  static ComplexMatrix diagonal(const std::vector<double>& d) {
    ComplexMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  const std::vector<cplx>& entries() const { return entries_; }

  bool is_hermitian(double tol = 1e-12) const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i; j < cols_; ++j)
        if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
    return true;
  }

  double trace_real() const {
    double t = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i).real();
    return t;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const cplx& z : entries_) s += std::norm(z);
    return std::sqrt(s);
  }

  ComplexMatrix conjugate_transpose() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
  }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols_ != b.rows_) throw config_error("matrix product: inner dimensions differ");
    ComplexMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const cplx aik = a(i, k);
        if (aik == cplx{}) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw config_error("matrix sum: dimensions differ");
    ComplexMatrix out = a;
    for (std::size_t i = 0; i < out.entries_.size(); ++i) out.entries_[i] += b.entries_[i];
    return out;
  }

  friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw config_error("matrix difference: dimensions differ");
    ComplexMatrix out = a;
    for (std::size_t i = 0; i < out.entries_.size(); ++i) out.entries_[i] -= b.entries_[i];
    return out;
  }

  friend ComplexMatrix operator*(double s, const ComplexMatrix& a) {
    ComplexMatrix out = a;
    for (cplx& z : out.entries_) z *= s;
    return out;
  }

  bool approx_equal(const ComplexMatrix& other, double tol = 1e-12) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) return false;
    for (std::size_t i = 0; i < entries_.size(); ++i)
      if (std::abs(entries_[i] - other.entries_[i]) > tol) return false;
    return true;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<cplx> entries_;
};

/// I + A K A^dagger, the Gram form appearing in every log-det rate.
/// K must be square with side equal to A's column count.
inline ComplexMatrix gram_plus_identity(const ComplexMatrix& a, const ComplexMatrix& k) {
  if (k.rows() != k.cols() || k.rows() != a.cols())
    throw config_error("gram_plus_identity: dimension mismatch");
  ComplexMatrix out = (a * k) * a.conjugate_transpose();
  for (std::size_t i = 0; i < out.rows(); ++i) out(i, i) += 1.0;
  // The product of Hermitian K with A .. A^dagger is Hermitian up to roundoff;
  // symmetrize so downstream Hermitian checks see an exact value.
  for (std::size_t i = 0; i < out.rows(); ++i)
    for (std::size_t j = i + 1; j < out.cols(); ++j) {
      const cplx avg = 0.5 * (out(i, j) + std::conj(out(j, i)));
      out(i, j) = avg;
      out(j, i) = std::conj(avg);
    }
  for (std::size_t i = 0; i < out.rows(); ++i) out(i, i) = out(i, i).real();
  return out;
}

/// log(det M) in nats for a Hermitian positive definite M, via Cholesky.
inline double logdet_hermitian_psd(const ComplexMatrix& m) {
  if (!m.is_hermitian(1e-12)) throw invariant_error("logdet_hermitian_psd: matrix not Hermitian");
  const std::size_t n = m.rows();
  // In-place lower Cholesky factor.
  std::vector<cplx> l(m.entries());
  auto at = [&](std::size_t i, std::size_t j) -> cplx& { return l[i * n + j]; };
  double logdet = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double d = at(j, j).real();
    for (std::size_t k = 0; k < j; ++k) d -= std::norm(at(j, k));
    if (!(d > 0.0)) throw numeric_domain_error("logdet_hermitian_psd: matrix not positive definite");
    const double ljj = std::sqrt(d);
    at(j, j) = ljj;
    logdet += 2.0 * std::log(ljj);
    for (std::size_t i = j + 1; i < n; ++i) {
      cplx s = at(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= at(i, k) * std::conj(at(j, k));
      at(i, j) = s / ljj;
    }
  }
  return logdet;
}

/// Positive semidefiniteness check with absolute tolerance: accepts M when
/// M + tol*scale*I is positive definite. Adequate for the desk-scale
/// covariances handled here.
inline bool is_psd(const ComplexMatrix& m, double tol = 1e-10) {
  if (!m.is_hermitian(1e-9)) return false;
  const double scale = 1.0 + std::abs(m.trace_real());
  ComplexMatrix shifted = m;
  for (std::size_t i = 0; i < shifted.rows(); ++i) shifted(i, i) += tol * scale;
  try {
    (void)logdet_hermitian_psd(shifted);
    return true;
  } catch (const numeric_domain_error&) {
    return false;
  } catch (const invariant_error&) {
    return false;
  }
}

}  // namespace secrecy
