#ifndef WBL_LINALG_H
#define WBL_LINALG_H

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace wbl {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

// Numerical tolerances shared by every module.
struct Tolerances {
  double hermiticity = 1e-12;     // max |M - M^dagger| elementwise
  double psd_slack = 1e-10;       // min eigenvalue allowed for PSD checks
  double reconstruction = 1e-9;   // eigendecomposition / unitarity checks
  double normalization = 1e-10;   // traces and POVM completeness
  double projective = 1e-9;       // |O^2 - 1| for dichotomic observables
};

inline constexpr Tolerances kTol{};

// Dense row-major complex matrix. Sizes here are tiny (<= 256), so every
// operation is a straightforward loop.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zeros(std::size_t rows, std::size_t cols);
  static ComplexMatrix diagonal(std::span<const double> diag);
  // |v><v|
  static ComplexMatrix projector(std::span<const cplx> v);
  static ComplexMatrix column(std::span<const cplx> v);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool empty() const { return data_.empty(); }

  cplx &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cplx &operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const cplx> data() const { return data_; }
  std::span<cplx> data() { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conj() const;
  cplx trace() const;

  ComplexMatrix &operator+=(const ComplexMatrix &o);
  ComplexMatrix &operator-=(const ComplexMatrix &o);
  ComplexMatrix &operator*=(cplx s);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
  friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b);

  bool operator==(const ComplexMatrix &o) const = default;

  std::string to_string(int precision = 6) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

CVector operator*(const ComplexMatrix &m, std::span<const cplx> v);

// <u|v>
cplx inner(std::span<const cplx> u, std::span<const cplx> v);
// <v|M|v>
cplx expectation(const ComplexMatrix &m, std::span<const cplx> v);
// Tr(A B) without forming the product.
cplx trace_of_product(const ComplexMatrix &a, const ComplexMatrix &b);

double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b);
double frobenius_norm(const ComplexMatrix &m);
double hermiticity_defect(const ComplexMatrix &m);
bool is_hermitian(const ComplexMatrix &m, double tol = kTol.hermiticity);
ComplexMatrix hermitian_part(const ComplexMatrix &m);

// Ordered local dimensions of a tensor-product space, e.g. {2,2,2,2}.
class SubsystemDims {
 public:
  SubsystemDims() = default;
  SubsystemDims(std::initializer_list<std::size_t> dims);
  explicit SubsystemDims(std::vector<std::size_t> dims);

  std::size_t count() const { return dims_.size(); }
  std::size_t operator[](std::size_t i) const { return dims_[i]; }
  std::size_t total() const;
  const std::vector<std::size_t> &values() const { return dims_; }

  bool operator==(const SubsystemDims &o) const = default;

 private:
  std::vector<std::size_t> dims_;
};

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix kron(std::initializer_list<const ComplexMatrix *> factors);

// Reduced matrix on the subsystems listed in `keep` (kept in their original
// order). Works for any square matrix, not only density matrices.
ComplexMatrix partial_trace(const ComplexMatrix &m, const SubsystemDims &dims,
                            std::span<const std::size_t> keep);
ComplexMatrix partial_trace(const ComplexMatrix &m, const SubsystemDims &dims,
                            std::initializer_list<std::size_t> keep);

// Output subsystem k is input subsystem perm[k].
ComplexMatrix permute_subsystems(const ComplexMatrix &m, const SubsystemDims &dims,
                                 std::span<const std::size_t> perm);
ComplexMatrix permute_subsystems(const ComplexMatrix &m, const SubsystemDims &dims,
                                 std::initializer_list<std::size_t> perm);
SubsystemDims permute_dims(const SubsystemDims &dims, std::span<const std::size_t> perm);

// Partial transpose of the subsystem `which`.
ComplexMatrix partial_transpose(const ComplexMatrix &m, const SubsystemDims &dims,
                                std::size_t which);

struct EigenDecomposition {
  std::vector<double> values;  // descending
  ComplexMatrix vectors;       // column k pairs with values[k]
  int sweeps = 0;

  CVector vector(std::size_t k) const;
};

// Cyclic complex Jacobi. Throws PreconditionError if m is not Hermitian
// within kTol.hermiticity.
EigenDecomposition hermitian_eig(const ComplexMatrix &m);
std::vector<double> eigenvalues(const ComplexMatrix &m);
double min_eigenvalue(const ComplexMatrix &m);
double max_eigenvalue(const ComplexMatrix &m);
double trace_norm(const ComplexMatrix &m);

// Matrix function applied to the spectrum of a Hermitian matrix.
template <typename F>
ComplexMatrix spectral_map(const ComplexMatrix &m, F &&f) {
  EigenDecomposition eig = hermitian_eig(m);
  std::vector<double> mapped(eig.values.size());
  for (std::size_t k = 0; k < mapped.size(); ++k) {
    mapped[k] = f(eig.values[k]);
  }
  return eig.vectors * ComplexMatrix::diagonal(mapped) * eig.vectors.adjoint();
}

struct PovmDiagnostics {
  bool valid = false;
  double min_eigenvalue = 0.0;        // smallest over all elements
  std::size_t worst_element = 0;      // element attaining min_eigenvalue
  double completeness_defect = 0.0;   // max |sum - 1| elementwise
  std::string message;
};

PovmDiagnostics validate_povm(std::span<const ComplexMatrix> elements,
                              const Tolerances &tol = kTol);

bool is_unitary(const ComplexMatrix &u, double tol = kTol.reconstruction);

namespace pauli {
ComplexMatrix I();
ComplexMatrix X();
ComplexMatrix Y();
ComplexMatrix Z();
}  // namespace pauli

}  // namespace wbl

#endif  // WBL_LINALG_H
