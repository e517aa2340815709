#include "rmtlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

namespace rmtlab {

EigenResult hermitian_eigen(const Eigen::MatrixXcd& m, bool want_vectors) {
    if (m.rows() != m.cols()) throw NumericError("hermitian_eigen: matrix is not square");
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (asym > 1e-12 * scale) {
        throw NumericError("hermitian_eigen: matrix is not Hermitian (max asymmetry " + std::to_string(asym) + ")");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
        m, want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericError("hermitian_eigen: eigensolver did not converge");

    EigenResult r;
    const Eigen::Index n = m.rows();
    r.spectrum.eigs.resize(n);
    // The solver returns ascending order.
    for (Eigen::Index i = 0; i < n; ++i) r.spectrum.eigs[i] = solver.eigenvalues()(n - 1 - i);
    if (want_vectors) r.vectors = solver.eigenvectors().rowwise().reverse();
    r.spectrum.dims.n = static_cast<int>(n);
    r.spectrum.dims.p = static_cast<int>(n);
    return r;
}

Spectrum covariance_spectrum(const MatrixSample& y) {
    Spectrum s = hermitian_eigen(form_covariance(y)).spectrum;
    s.dims = y.dims;
    return s;
}

cd empirical_stieltjes(const Spectrum& s, cd z) {
    if (!(z.imag() > 0.0)) throw NumericError("empirical_stieltjes: need Im z > 0");
    cd sum = 0.0;
    for (double l : s.eigs) sum += 1.0 / (l - z);
    return sum / static_cast<double>(s.eigs.size());
}

int counting_function(const Spectrum& s, double lo, double hi) {
    int count = 0;
    for (double l : s.eigs) count += (l >= lo && l <= hi) ? 1 : 0;
    return count;
}

namespace {

Eigen::MatrixXcd hermitian_from(const Eigen::MatrixXcd& w) {
    MatrixSample tmp;
    tmp.y = w;
    return form_covariance(tmp);
}

}  // namespace

double resolvent_identity_residual(const MatrixSample& w, cd z) {
    if (!(z.imag() > 0.0)) throw NumericError("resolvent_identity_residual: need Im z > 0");
    const Eigen::Index n = w.y.rows(), p = w.y.cols();
    const Eigen::MatrixXcd h = form_covariance(w);
    const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(n, n);

    const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(h - z * eye);
    const cd m = lu.solve(eye).trace() / static_cast<double>(n);
    const cd lhs = 1.0 + z * m;

    cd acc = 0.0;
    for (Eigen::Index k = 0; k < p; ++k) {
        const Eigen::VectorXcd c = w.y.col(k) / std::sqrt(static_cast<double>(n));
        const Eigen::MatrixXcd reduced = h - c * c.adjoint();
        const Eigen::PartialPivLU<Eigen::MatrixXcd> luk(reduced - z * eye);
        const cd q = c.dot(luk.solve(c));  // conjugates the first argument
        if (!std::isfinite(std::abs(q))) throw NumericError("resolvent_identity_residual: singular solve");
        acc += 1.0 / (1.0 + q);
    }
    const cd rhs = static_cast<double>(p) / n - acc / static_cast<double>(n);
    return std::abs(lhs - rhs);
}

InterlacingReport interlacing_check(const MatrixSample& w, int k, double slack) {
    const int p = static_cast<int>(w.y.cols());
    if (k < 1 || k > p) throw ConfigError("interlacing_check: column index out of range");
    const Eigen::Index n = w.y.rows();
    const Eigen::MatrixXcd h = form_covariance(w);
    const Eigen::VectorXcd c = w.y.col(k - 1) / std::sqrt(static_cast<double>(n));
    const std::vector<double> full = hermitian_eigen(h).spectrum.eigs;
    const Eigen::MatrixXcd reduced_m = h - c * c.adjoint();
    const std::vector<double> red = hermitian_eigen(0.5 * (reduced_m + reduced_m.adjoint())).spectrum.eigs;

    InterlacingReport r;
    for (Eigen::Index i = 0; i < n && r.ok; ++i) {
        const bool upper = full[i] + slack >= red[i];
        const bool lower = (i + 1 == n) || red[i] + slack >= full[i + 1];
        if (!upper || !lower) {
            r.ok = false;
            r.violating_index = static_cast<int>(i);
        }
    }
    // The counting functions only change at eigenvalues, so checking there suffices.
    std::vector<double> pts = full;
    pts.insert(pts.end(), red.begin(), red.end());
    for (double x : pts) {
        int a = 0, b = 0;
        for (double l : full) a += l <= x ? 1 : 0;
        for (double l : red) b += l <= x ? 1 : 0;
        r.max_count_gap = std::max(r.max_count_gap, std::abs(a - b));
    }
    if (r.max_count_gap > 1) r.ok = false;
    return r;
}

std::vector<double> projection_weights(const Eigen::MatrixXcd& reduced_vectors, const Eigen::VectorXcd& c) {
    const double root_n = std::sqrt(static_cast<double>(c.size()));
    const Eigen::VectorXcd proj = reduced_vectors.adjoint() * (root_n * c);
    std::vector<double> xi(proj.size());
    for (Eigen::Index i = 0; i < proj.size(); ++i) xi[i] = std::norm(proj(i));
    return xi;
}

ColumnData column_data(const MatrixSample& w, int k) {
    const int p = static_cast<int>(w.y.cols());
    if (k < 1 || k > p) throw ConfigError("column_data: column index out of range");
    const Eigen::Index n = w.y.rows();
    ColumnData out;
    out.k = k;
    out.c = w.y.col(k - 1) / std::sqrt(static_cast<double>(n));
    Eigen::MatrixXcd rest(n, p - 1);
    for (int j = 0, col = 0; j < p; ++j) {
        if (j != k - 1) rest.col(col++) = w.y.col(j);
    }
    const EigenResult er = hermitian_eigen(hermitian_from(rest), true);
    out.reduced = er.spectrum;
    out.reduced.dims = w.dims;
    out.weights = projection_weights(er.vectors, out.c);
    return out;
}

cd quadratic_form_statistic(const ColumnData& cdata, cd z, double sigma2) {
    if (!(z.imag() > 0.0)) throw NumericError("quadratic_form_statistic: need Im z > 0");
    const std::size_t n = cdata.weights.size();
    cd sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += (cdata.weights[i] / sigma2 - 1.0) / (cdata.reduced.eigs[i] - z);
    return sum / static_cast<double>(n);
}

void write_spectrum_csv(const Spectrum& s, std::ostream& out) {
    out << "lambda\n" << std::setprecision(17);
    for (double l : s.eigs) out << l << '\n';
}

}  // namespace rmtlab
