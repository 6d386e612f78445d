#include "wbl/linalg.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <iomanip>

#include "wbl/errors.h"

namespace wbl {

namespace {

void require_same_shape(const ComplexMatrix &a, const ComplexMatrix &b, const char *op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    std::ostringstream os;
    os << op << ": shape mismatch " << a.rows() << "x" << a.cols() << " vs " << b.rows()
       << "x" << b.cols();
    throw ConfigError(os.str());
  }
}

// Mixed-radix digits of a flat index, most significant subsystem first.
std::vector<std::size_t> digits_of(std::size_t index, const std::vector<std::size_t> &dims) {
  std::vector<std::size_t> out(dims.size());
  for (std::size_t k = dims.size(); k-- > 0;) {
    out[k] = index % dims[k];
    index /= dims[k];
  }
  return out;
}

void require_dims_match(const ComplexMatrix &m, const SubsystemDims &dims, const char *op) {
  if (!m.is_square()) {
    throw ConfigError(std::string(op) + ": matrix is not square");
  }
  if (dims.total() != m.rows()) {
    std::ostringstream os;
    os << op << ": subsystem dims multiply to " << dims.total() << " but matrix is "
       << m.rows() << "x" << m.cols();
    throw ConfigError(os.str());
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) {
    throw ConfigError("ComplexMatrix: entry count does not match rows*cols");
  }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto &row : rows) {
    if (row.size() != cols_) {
      throw ConfigError("ComplexMatrix: ragged initializer");
    }
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::zeros(std::size_t rows, std::size_t cols) {
  return ComplexMatrix(rows, cols);
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> diag) {
  ComplexMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

ComplexMatrix ComplexMatrix::projector(std::span<const cplx> v) {
  ComplexMatrix m(v.size(), v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) {
      m(i, j) = v[i] * std::conj(v[j]);
    }
  }
  return m;
}

ComplexMatrix ComplexMatrix::column(std::span<const cplx> v) {
  return ComplexMatrix(v.size(), 1, std::vector<cplx>(v.begin(), v.end()));
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      out(c, r) = std::conj((*this)(r, c));
    }
  }
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      out(c, r) = (*this)(r, c);
    }
  }
  return out;
}

ComplexMatrix ComplexMatrix::conj() const {
  ComplexMatrix out = *this;
  for (auto &z : out.data_) z = std::conj(z);
  return out;
}

cplx ComplexMatrix::trace() const {
  if (!is_square()) throw ConfigError("trace: matrix is not square");
  cplx t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &o) {
  require_same_shape(*this, o, "operator+");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

ComplexMatrix &ComplexMatrix::operator-=(const ComplexMatrix &o) {
  require_same_shape(*this, o, "operator-");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

ComplexMatrix &ComplexMatrix::operator*=(cplx s) {
  for (auto &z : data_) z *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
  if (a.cols() != b.rows()) {
    throw ConfigError("matrix product: inner dimensions differ");
  }
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx(0.0)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        out(i, j) += aik * b(k, j);
      }
    }
  }
  return out;
}

std::string ComplexMatrix::to_string(int precision) const {
  std::ostringstream os;
  os << std::setprecision(precision);
  for (std::size_t r = 0; r < rows_; ++r) {
    os << (r == 0 ? "[" : " ");
    for (std::size_t c = 0; c < cols_; ++c) {
      const cplx z = (*this)(r, c);
      os << " (" << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i)";
    }
    os << (r + 1 == rows_ ? " ]" : "\n");
  }
  return os.str();
}

CVector operator*(const ComplexMatrix &m, std::span<const cplx> v) {
  if (m.cols() != v.size()) throw ConfigError("matrix-vector product: size mismatch");
  CVector out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    cplx acc = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) acc += m(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

cplx inner(std::span<const cplx> u, std::span<const cplx> v) {
  if (u.size() != v.size()) throw ConfigError("inner: size mismatch");
  cplx acc = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) acc += std::conj(u[i]) * v[i];
  return acc;
}

cplx expectation(const ComplexMatrix &m, std::span<const cplx> v) {
  return inner(v, m * v);
}

cplx trace_of_product(const ComplexMatrix &a, const ComplexMatrix &b) {
  if (a.cols() != b.rows() || a.rows() != b.cols()) {
    throw ConfigError("trace_of_product: shape mismatch");
  }
  cplx acc = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * b(j, i);
  }
  return acc;
}

double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
  require_same_shape(a, b, "max_abs_diff");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) {
    worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
  }
  return worst;
}

double frobenius_norm(const ComplexMatrix &m) {
  double acc = 0.0;
  for (const cplx &z : m.data()) acc += std::norm(z);
  return std::sqrt(acc);
}

double hermiticity_defect(const ComplexMatrix &m) {
  if (!m.is_square()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = i; j < m.cols(); ++j) {
      worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
    }
  }
  return worst;
}

bool is_hermitian(const ComplexMatrix &m, double tol) { return hermiticity_defect(m) <= tol; }

ComplexMatrix hermitian_part(const ComplexMatrix &m) { return 0.5 * (m + m.adjoint()); }

SubsystemDims::SubsystemDims(std::initializer_list<std::size_t> dims)
    : SubsystemDims(std::vector<std::size_t>(dims)) {}

SubsystemDims::SubsystemDims(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
  for (std::size_t d : dims_) {
    if (d < 2) throw ConfigError("SubsystemDims: every local dimension must be >= 2");
  }
}

std::size_t SubsystemDims::total() const {
  return std::accumulate(dims_.begin(), dims_.end(), std::size_t{1}, std::multiplies<>());
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ar = 0; ar < a.rows(); ++ar) {
    for (std::size_t ac = 0; ac < a.cols(); ++ac) {
      const cplx s = a(ar, ac);
      if (s == cplx(0.0)) continue;
      for (std::size_t br = 0; br < b.rows(); ++br) {
        for (std::size_t bc = 0; bc < b.cols(); ++bc) {
          out(ar * b.rows() + br, ac * b.cols() + bc) = s * b(br, bc);
        }
      }
    }
  }
  return out;
}

ComplexMatrix kron(std::initializer_list<const ComplexMatrix *> factors) {
  if (factors.size() == 0) return ComplexMatrix::identity(1);
  auto it = factors.begin();
  ComplexMatrix out = **it;
  for (++it; it != factors.end(); ++it) out = kron(out, **it);
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix &m, const SubsystemDims &dims,
                            std::span<const std::size_t> keep) {
  require_dims_match(m, dims, "partial_trace");
  const std::size_t n = dims.count();
  std::vector<bool> kept(n, false);
  for (std::size_t k : keep) {
    if (k >= n || kept[k]) throw ConfigError("partial_trace: invalid keep set");
    kept[k] = true;
  }

  // Split every flat index into (kept part, traced part).
  const std::size_t total = m.rows();
  std::vector<std::size_t> kept_index(total), traced_index(total);
  std::size_t kept_dim = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (kept[k]) kept_dim *= dims[k];
  }
  for (std::size_t i = 0; i < total; ++i) {
    const auto d = digits_of(i, dims.values());
    std::size_t ki = 0, ti = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (kept[k]) {
        ki = ki * dims[k] + d[k];
      } else {
        ti = ti * dims[k] + d[k];
      }
    }
    kept_index[i] = ki;
    traced_index[i] = ti;
  }

  ComplexMatrix out(kept_dim, kept_dim);
  for (std::size_t i = 0; i < total; ++i) {
    for (std::size_t j = 0; j < total; ++j) {
      if (traced_index[i] == traced_index[j]) {
        out(kept_index[i], kept_index[j]) += m(i, j);
      }
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix &m, const SubsystemDims &dims,
                            std::initializer_list<std::size_t> keep) {
  return partial_trace(m, dims, std::span<const std::size_t>(keep.begin(), keep.size()));
}

SubsystemDims permute_dims(const SubsystemDims &dims, std::span<const std::size_t> perm) {
  if (perm.size() != dims.count()) {
    throw ConfigError("permute_subsystems: permutation length differs from subsystem count");
  }
  std::vector<bool> seen(perm.size(), false);
  std::vector<std::size_t> out(perm.size());
  for (std::size_t k = 0; k < perm.size(); ++k) {
    if (perm[k] >= perm.size() || seen[perm[k]]) {
      throw ConfigError("permute_subsystems: not a permutation");
    }
    seen[perm[k]] = true;
    out[k] = dims[perm[k]];
  }
  return SubsystemDims(std::move(out));
}

ComplexMatrix permute_subsystems(const ComplexMatrix &m, const SubsystemDims &dims,
                                 std::span<const std::size_t> perm) {
  require_dims_match(m, dims, "permute_subsystems");
  const SubsystemDims out_dims = permute_dims(dims, perm);
  const std::size_t total = m.rows();
  std::vector<std::size_t> target(total);
  for (std::size_t i = 0; i < total; ++i) {
    const auto d = digits_of(i, dims.values());
    std::size_t t = 0;
    for (std::size_t k = 0; k < perm.size(); ++k) t = t * out_dims[k] + d[perm[k]];
    target[i] = t;
  }
  ComplexMatrix out(total, total);
  for (std::size_t i = 0; i < total; ++i) {
    for (std::size_t j = 0; j < total; ++j) out(target[i], target[j]) = m(i, j);
  }
  return out;
}

ComplexMatrix permute_subsystems(const ComplexMatrix &m, const SubsystemDims &dims,
                                 std::initializer_list<std::size_t> perm) {
  return permute_subsystems(m, dims, std::span<const std::size_t>(perm.begin(), perm.size()));
}

ComplexMatrix partial_transpose(const ComplexMatrix &m, const SubsystemDims &dims,
                                std::size_t which) {
  require_dims_match(m, dims, "partial_transpose");
  if (which >= dims.count()) throw ConfigError("partial_transpose: subsystem out of range");
  const std::size_t total = m.rows();
  std::size_t stride = 1;
  for (std::size_t k = which + 1; k < dims.count(); ++k) stride *= dims[k];
  const std::size_t d = dims[which];
  ComplexMatrix out(total, total);
  for (std::size_t i = 0; i < total; ++i) {
    const std::size_t di = (i / stride) % d;
    for (std::size_t j = 0; j < total; ++j) {
      const std::size_t dj = (j / stride) % d;
      // swap the `which` digit between row and column
      const std::size_t i2 = i + (dj - di) * stride;
      const std::size_t j2 = j + (di - dj) * stride;
      out(i2, j2) = m(i, j);
    }
  }
  return out;
}

CVector EigenDecomposition::vector(std::size_t k) const {
  CVector v(vectors.rows());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = vectors(i, k);
  return v;
}

EigenDecomposition hermitian_eig(const ComplexMatrix &m) {
  if (!m.is_square()) throw PreconditionError("hermitian_eig: matrix is not square");
  const double defect = hermiticity_defect(m);
  if (defect > kTol.hermiticity) {
    std::ostringstream os;
    os << "hermitian_eig: matrix is not Hermitian (defect " << defect << ")";
    throw PreconditionError(os.str());
  }
  const std::size_t n = m.rows();
  ComplexMatrix a = hermitian_part(m);
  ComplexMatrix v = ComplexMatrix::identity(n);

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
  };
  const double scale = std::max(frobenius_norm(a), 1e-300);

  int sweep = 0;
  constexpr int kMaxSweeps = 100;
  for (; sweep < kMaxSweeps; ++sweep) {
    if (off_norm() <= 1e-15 * scale) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double h = std::abs(apq);
        if (h <= 1e-300) continue;
        // Phase the q column so that the pair block becomes real symmetric,
        // then rotate by the eigenvector angle of that 2x2 block.
        const cplx phase = apq / h;  // e^{i phi}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = 0.5 * std::atan2(2.0 * h, app - aqq);
        const double c = std::cos(theta), s = std::sin(theta);
        // G = diag(1, conj(phase)) * [[c, -s], [s, c]]
        const cplx gpp = c, gpq = -s, gqp = s * std::conj(phase), gqq = c * std::conj(phase);

        for (std::size_t k = 0; k < n; ++k) {  // A <- A G
          const cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * gpp + akq * gqp;
          a(k, q) = akp * gpq + akq * gqq;
        }
        for (std::size_t k = 0; k < n; ++k) {  // A <- G^dagger A
          const cplx apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
          a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {  // V <- V G
          const cplx vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * gpp + vkq * gqp;
          v(k, q) = vkp * gpq + vkq * gqq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });
  EigenDecomposition out;
  out.sweeps = sweep;
  out.values.resize(n);
  out.vectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

std::vector<double> eigenvalues(const ComplexMatrix &m) { return hermitian_eig(m).values; }

double min_eigenvalue(const ComplexMatrix &m) { return eigenvalues(m).back(); }

double max_eigenvalue(const ComplexMatrix &m) { return eigenvalues(m).front(); }

double trace_norm(const ComplexMatrix &m) {
  double acc = 0.0;
  for (double l : eigenvalues(m)) acc += std::abs(l);
  return acc;
}

PovmDiagnostics validate_povm(std::span<const ComplexMatrix> elements, const Tolerances &tol) {
  PovmDiagnostics diag;
  if (elements.empty()) {
    diag.message = "POVM has no elements";
    return diag;
  }
  const std::size_t n = elements.front().rows();
  ComplexMatrix sum(n, n);
  diag.min_eigenvalue = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < elements.size(); ++k) {
    const ComplexMatrix &e = elements[k];
    if (!e.is_square() || e.rows() != n) {
      diag.message = "POVM element " + std::to_string(k) + " has the wrong shape";
      diag.min_eigenvalue = -std::numeric_limits<double>::infinity();
      return diag;
    }
    if (!is_hermitian(e, tol.hermiticity)) {
      diag.message = "POVM element " + std::to_string(k) + " is not Hermitian";
      diag.min_eigenvalue = -std::numeric_limits<double>::infinity();
      diag.worst_element = k;
      return diag;
    }
    const double lo = min_eigenvalue(e);
    if (lo < diag.min_eigenvalue) {
      diag.min_eigenvalue = lo;
      diag.worst_element = k;
    }
    sum += e;
  }
  diag.completeness_defect = max_abs_diff(sum, ComplexMatrix::identity(n));
  const bool psd = diag.min_eigenvalue >= -tol.psd_slack;
  const bool complete = diag.completeness_defect <= tol.normalization;
  diag.valid = psd && complete;
  if (!psd) {
    std::ostringstream os;
    os << "POVM element " << diag.worst_element << " has eigenvalue " << diag.min_eigenvalue;
    diag.message = os.str();
  } else if (!complete) {
    std::ostringstream os;
    os << "POVM elements sum to identity only within " << diag.completeness_defect;
    diag.message = os.str();
  }
  return diag;
}

bool is_unitary(const ComplexMatrix &u, double tol) {
  if (!u.is_square()) return false;
  return max_abs_diff(u.adjoint() * u, ComplexMatrix::identity(u.rows())) <= tol;
}

namespace pauli {
ComplexMatrix I() { return ComplexMatrix::identity(2); }
ComplexMatrix X() { return {{0.0, 1.0}, {1.0, 0.0}}; }
ComplexMatrix Y() { return {{0.0, cplx(0.0, -1.0)}, {cplx(0.0, 1.0), 0.0}}; }
ComplexMatrix Z() { return {{1.0, 0.0}, {0.0, -1.0}}; }
}  // namespace pauli

}  // namespace wbl
