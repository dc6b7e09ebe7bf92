#pragma once

#include <optional>
#include <string>
#include <vector>

#include <seqnet/matrix.hpp>
#include <seqnet/topology.hpp>

namespace seqnet {

// Spectral summary of a candidate consensus matrix. Failures are reported in
// the structure, never thrown.
struct SpectralReport {
    std::vector<double> eigenvalues;  // descending; singular values for non-symmetric input
    double sigma1 = 0.0;
    double sigma2 = 0.0;
    bool condition1_ok = false;
    std::vector<std::string> warnings;
};

// Consensus weight matrix with its spectral metadata. sigma2 < 1 always holds
// for constructed instances; sigma2 == 0 (fully connected network) is accepted
// with a warning since the consensus step is then exact.
struct WeightMatrix {
    Matrix w;
    double sigma2 = 0.0;
    std::optional<double> delta;  // step size; absent for user-supplied matrices
    std::vector<std::string> warnings;

    int size() const { return w.rows; }
};

// All eigenvalues of a symmetric matrix, sorted descending, via cyclic Jacobi
// rotations. Sweeps until the off-diagonal Frobenius norm drops below 1e-12
// (at most 100 sweeps). Throws on non-symmetric input or non-convergence.
std::vector<double> symmetric_eigenvalues(const Matrix& mat);

// W = I - delta * L with delta = 2 / (lambda_1 + lambda_{K-1}), the step that
// minimizes sigma2 over the family. sigma2 = max(1 - delta*lambda_{K-1},
// delta*lambda_1 - 1).
WeightMatrix equal_weight_matrix(const Topology& t);

// Wraps a user-supplied matrix after validating it (throws if the row/column
// sums are off or sigma2 >= 1).
WeightMatrix weight_matrix_from(const Matrix& w);

// Row/column sums and 0 < sigma2 < 1. sigma2 comes from the eigenvalues of
// W^T W when W is not symmetric.
SpectralReport validate_condition1(const Matrix& w);

// W^t by repeated squaring; t = 0 gives the identity.
Matrix matrix_power(const Matrix& w, unsigned t);

// Difference matrix W^t - J, cross-checked against (W - J)^t; the two routes
// must agree within 1e-10 or the call throws (numerical breakdown).
Matrix delta_matrix(const WeightMatrix& w, unsigned t);

}  // namespace seqnet
