#include "zplane/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "zplane/error.hpp"

extern "C" void zgeev_(const char* jobvl, const char* jobvr, const int* n, std::complex<double>* a,
                       const int* lda, std::complex<double>* w, std::complex<double>* vl,
                       const int* ldvl, std::complex<double>* vr, const int* ldvr,
                       std::complex<double>* work, const int* lwork, double* rwork, int* info);

namespace zplane {

namespace {

void check_input(const Eigen::MatrixXcd& matrix) {
  if (matrix.rows() < 1 || matrix.rows() != matrix.cols())
    throw SolverError("eigensolver needs a non-empty square matrix");
  if (!matrix.allFinite())
    throw SolverError("eigensolver input of order " + std::to_string(matrix.rows()) +
                      " contains non-finite entries");
}

void fix_phase(Eigen::Ref<Eigen::VectorXcd> v) {
  const double norm = v.norm();
  if (norm == 0.0) return;
  v /= norm;
  Eigen::Index best = 0;
  double best_abs = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v(i));
    if (a > best_abs * (1.0 + 1e-12)) {
      best_abs = a;
      best = i;
    }
  }
  v *= std::conj(v(best)) / best_abs;
  v(best) = best_abs;
}

struct RawSpectrum {
  Eigen::VectorXcd values;
  Eigen::MatrixXcd vectors; // empty unless requested
};

// zgeev: balance, Hessenberg reduction, shifted QR, then back-substituted
// right eigenvectors.
RawSpectrum run_solver(const Eigen::MatrixXcd& matrix, bool want_vectors) {
  int n = static_cast<int>(matrix.rows());
  int one = 1;
  int ldvr = want_vectors ? n : 1;
  const char jobvl = 'N';
  const char jobvr = want_vectors ? 'V' : 'N';
  Eigen::MatrixXcd a = matrix;
  RawSpectrum out;
  out.values.resize(n);
  if (want_vectors) out.vectors.resize(n, n);
  std::vector<double> rwork(2 * static_cast<std::size_t>(n));
  cplx* vr = want_vectors ? out.vectors.data() : nullptr;

  int lwork = -1;
  int info = 0;
  cplx query;
  zgeev_(&jobvl, &jobvr, &n, a.data(), &n, out.values.data(), nullptr, &one, vr, &ldvr, &query,
         &lwork, rwork.data(), &info);
  lwork = std::max(1, static_cast<int>(query.real()));
  std::vector<cplx> work(lwork);
  zgeev_(&jobvl, &jobvr, &n, a.data(), &n, out.values.data(), nullptr, &one, vr, &ldvr,
         work.data(), &lwork, rwork.data(), &info);
  if (info > 0) {
    throw SolverError("shifted QR did not converge for matrix of order " + std::to_string(n) +
                      ": eigenvalues 1.." + std::to_string(info) +
                      " failed to deflate; perturb theta or lambda and retry");
  }
  if (info < 0) throw SolverError("zgeev rejected argument " + std::to_string(-info));
  return out;
}

} // namespace

bool charge_less(cplx a, cplx b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

EigenSet eigen_decompose(const Eigen::MatrixXcd& matrix) {
  check_input(matrix);
  const RawSpectrum spectrum = run_solver(matrix, true);
  const Eigen::Index n = matrix.rows();

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  const auto& values = spectrum.values;
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return charge_less(values(a), values(b)); });

  EigenSet out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  out.residual_norms.resize(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values[k] = values(order[k]);
    out.vectors.col(k) = spectrum.vectors.col(order[k]);
    fix_phase(out.vectors.col(k));
    out.residual_norms[k] =
        (matrix * out.vectors.col(k) - out.values[k] * out.vectors.col(k)).norm();
  }
  return out;
}

std::vector<cplx> eigenvalues(const Eigen::MatrixXcd& matrix) {
  check_input(matrix);
  const RawSpectrum spectrum = run_solver(matrix, false);
  std::vector<cplx> out(spectrum.values.data(), spectrum.values.data() + spectrum.values.size());
  std::sort(out.begin(), out.end(), charge_less);
  return out;
}

Eigen::VectorXcd eigenvector_near(const Eigen::MatrixXcd& matrix, cplx eigenvalue) {
  check_input(matrix);
  const Eigen::Index n = matrix.rows();
  // Shift slightly off the eigenvalue so the factorization stays finite.
  const double nudge = 1e-13 * std::max(1.0, matrix.norm());
  Eigen::MatrixXcd shifted = matrix;
  shifted.diagonal().array() -= eigenvalue + cplx(nudge, nudge);
  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(shifted);

  Eigen::VectorXcd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = cplx(1.0, 0.5 / (1.0 + i));
  v.normalize();
  for (int iter = 0; iter < 3; ++iter) {
    v = lu.solve(v);
    if (!v.allFinite())
      throw SolverError("inverse iteration broke down at eigenvalue (" +
                        std::to_string(eigenvalue.real()) + ", " +
                        std::to_string(eigenvalue.imag()) + ")");
    v.normalize();
  }
  fix_phase(v);
  return v;
}

namespace {

cplx bilinear_ratio(const cplx numerator, const Eigen::VectorXcd& x) {
  const cplx xx = x.transpose() * x;
  if (std::abs(xx) < 1e-8 * x.squaredNorm())
    throw DerivativeError("quasi-null eigenvector (x^T x ~ 0); use finite differences");
  return numerator / xx;
}

} // namespace

cplx eigenvalue_derivative(const Eigen::MatrixXcd& derivative, const Eigen::VectorXcd& x) {
  const cplx num = x.transpose() * (derivative * x);
  return bilinear_ratio(num, x);
}

cplx eigenvalue_derivative(const ComplexTridiagonal& derivative, const Eigen::VectorXcd& x) {
  const cplx num = x.transpose() * (derivative * x);
  return bilinear_ratio(num, x);
}

} // namespace zplane
