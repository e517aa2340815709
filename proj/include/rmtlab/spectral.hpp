#pragma once

#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "rmtlab/common.hpp"
#include "rmtlab/ensemble.hpp"

namespace rmtlab {

// Eigenvalues sorted descending.
struct Spectrum {
    std::vector<double> eigs;
    EnsembleDims dims;

    std::size_t size() const { return eigs.size(); }
    std::vector<double> ascending() const { return {eigs.rbegin(), eigs.rend()}; }
};

struct EigenResult {
    Spectrum spectrum;
    Eigen::MatrixXcd vectors;  // column i belongs to spectrum.eigs[i]; empty unless requested
};

EigenResult hermitian_eigen(const Eigen::MatrixXcd& m, bool want_vectors = false);

// Spectrum of YY^*/N.
Spectrum covariance_spectrum(const MatrixSample& y);

// (1/N) sum 1/(lambda_i - z), Im z > 0.
cd empirical_stieltjes(const Spectrum& s, cd z);

// Number of eigenvalues in the closed interval [lo, hi].
int counting_function(const Spectrum& s, double lo, double hi);

// |(1 + z m_N) - (p/N - (1/N) sum_k 1/(1 + C_k^* R^(k) C_k))| for H = WW^*/N,
// with C_k = (column k of W)/sqrt(N) and R^(k) the resolvent of H - C_k C_k^*.
double resolvent_identity_residual(const MatrixSample& w, cd z);

struct InterlacingReport {
    bool ok = true;
    int violating_index = -1;  // first i (0-based) where the chain breaks
    int max_count_gap = 0;     // sup_x |N F_N(x) - N F_N^(k)(x)|
};

// Column indices are 1-based, 1 <= k <= p.
InterlacingReport interlacing_check(const MatrixSample& w, int k, double slack = 1e-10);

struct ColumnData {
    int k = 1;
    Eigen::VectorXcd c;            // column k of W divided by sqrt(N)
    Spectrum reduced;              // spectrum of H - c c^*
    std::vector<double> weights;   // |<v_i, sqrt(N) c>|^2, aligned with reduced.eigs
};

ColumnData column_data(const MatrixSample& w, int k);

// Weights for a fixed reduced problem and a new column vector c.
std::vector<double> projection_weights(const Eigen::MatrixXcd& reduced_vectors, const Eigen::VectorXcd& c);

// (1/N) sum_i (xi_i / sigma2 - 1) / (y_i - z).
cd quadratic_form_statistic(const ColumnData& cdata, cd z, double sigma2);

void write_spectrum_csv(const Spectrum& s, std::ostream& out);

}  // namespace rmtlab
