#include <seqnet/weights.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace seqnet {

namespace {

constexpr double kOffDiagTol = 1e-12;
constexpr int kMaxSweeps = 100;
constexpr double kSumTol = 1e-12;

double off_diagonal_norm(const Matrix& m) {
    double s = 0.0;
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j)
            if (i != j) s += m.at(i, j) * m.at(i, j);
    return std::sqrt(s);
}

// One Jacobi rotation zeroing a(p,q), applied symmetrically.
void rotate(Matrix& a, int p, int q) {
    const double apq = a.at(p, q);
    if (apq == 0.0) return;
    const double theta = (a.at(q, q) - a.at(p, p)) / (2.0 * apq);
    const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;
    const double tau = s / (1.0 + c);

    const double app = a.at(p, p);
    const double aqq = a.at(q, q);
    a.at(p, p) = app - t * apq;
    a.at(q, q) = aqq + t * apq;
    a.at(p, q) = 0.0;
    a.at(q, p) = 0.0;
    for (int k = 0; k < a.rows; ++k) {
        if (k == p || k == q) continue;
        const double akp = a.at(k, p);
        const double akq = a.at(k, q);
        a.at(k, p) = akp - s * (akq + tau * akp);
        a.at(p, k) = a.at(k, p);
        a.at(k, q) = akq + s * (akp - tau * akq);
        a.at(q, k) = a.at(k, q);
    }
}

Matrix transpose(const Matrix& m) {
    Matrix t(m.cols, m.rows);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) t.at(j, i) = m.at(i, j);
    return t;
}

bool is_symmetric(const Matrix& m, double tol) {
    if (!m.square()) return false;
    for (int i = 0; i < m.rows; ++i)
        for (int j = i + 1; j < m.cols; ++j)
            if (std::abs(m.at(i, j) - m.at(j, i)) > tol) return false;
    return true;
}

// Singular values of a square matrix, descending.
std::vector<double> singular_values(const Matrix& w) {
    std::vector<double> sv;
    if (is_symmetric(w, 1e-10)) {
        sv = symmetric_eigenvalues(w);
        for (auto& v : sv) v = std::abs(v);
    } else {
        auto ev = symmetric_eigenvalues(mat_mul(transpose(w), w));
        sv.reserve(ev.size());
        for (double v : ev) sv.push_back(std::sqrt(std::max(0.0, v)));
    }
    std::sort(sv.begin(), sv.end(), std::greater<>());
    return sv;
}

double max_unit_sum_error(const Matrix& w) {
    double err = 0.0;
    for (int i = 0; i < w.rows; ++i) {
        double row = 0.0, col = 0.0;
        for (int j = 0; j < w.cols; ++j) {
            row += w.at(i, j);
            col += w.at(j, i);
        }
        err = std::max({err, std::abs(row - 1.0), std::abs(col - 1.0)});
    }
    return err;
}

}  // namespace

std::vector<double> symmetric_eigenvalues(const Matrix& mat) {
    if (!mat.square()) throw std::invalid_argument("symmetric_eigenvalues: matrix not square");
    if (!is_symmetric(mat, 1e-10))
        throw std::invalid_argument("symmetric_eigenvalues: matrix not symmetric within 1e-10");

    Matrix a = mat;
    // Symmetrize exactly so rotations stay consistent.
    for (int i = 0; i < a.rows; ++i)
        for (int j = i + 1; j < a.cols; ++j) {
            const double v = 0.5 * (a.at(i, j) + a.at(j, i));
            a.at(i, j) = v;
            a.at(j, i) = v;
        }

    bool converged = a.rows == 1 || off_diagonal_norm(a) < kOffDiagTol;
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        for (int p = 0; p < a.rows - 1; ++p)
            for (int q = p + 1; q < a.rows; ++q) rotate(a, p, q);
        converged = off_diagonal_norm(a) < kOffDiagTol;
    }
    if (!converged)
        throw std::runtime_error("symmetric_eigenvalues: Jacobi sweep budget exhausted");

    std::vector<double> ev(a.rows);
    for (int i = 0; i < a.rows; ++i) ev[i] = a.at(i, i);
    std::sort(ev.begin(), ev.end(), std::greater<>());
    return ev;
}

WeightMatrix equal_weight_matrix(const Topology& t) {
    const int n = t.n_sensors;
    if (n < 2) throw std::invalid_argument("equal_weight_matrix: need at least 2 sensors");

    const Matrix lap = laplacian(t);
    const auto ev = symmetric_eigenvalues(lap);  // descending; ev.back() ~ 0
    const double lambda_max = ev.front();
    const double lambda_conn = ev[n - 2];  // algebraic connectivity
    if (lambda_conn <= 1e-12)
        throw std::runtime_error("equal_weight_matrix: zero algebraic connectivity");

    WeightMatrix wm;
    wm.delta = 2.0 / (lambda_max + lambda_conn);
    wm.w = Matrix::identity(n);
    for (std::size_t i = 0; i < wm.w.a.size(); ++i) wm.w.a[i] -= *wm.delta * lap.a[i];
    wm.sigma2 = std::max(1.0 - *wm.delta * lambda_conn, *wm.delta * lambda_max - 1.0);
    if (wm.sigma2 < 1e-12) {
        wm.sigma2 = std::max(wm.sigma2, 0.0);
        wm.warnings.push_back(
            "sigma2 = 0: fully connected network, consensus is exact and the test "
            "reduces to the centralized one");
    }
    return wm;
}

WeightMatrix weight_matrix_from(const Matrix& w) {
    const auto report = validate_condition1(w);
    if (max_unit_sum_error(w) > kSumTol)
        throw std::invalid_argument("weight matrix: row/column sums differ from 1");
    if (report.sigma2 >= 1.0 - 1e-12)
        throw std::invalid_argument("weight matrix: sigma2 >= 1, consensus would not mix");
    WeightMatrix wm;
    wm.w = w;
    wm.sigma2 = report.sigma2;
    wm.warnings = report.warnings;
    return wm;
}

SpectralReport validate_condition1(const Matrix& w) {
    SpectralReport r;
    if (!w.square()) {
        r.warnings.push_back("matrix is not square");
        return r;
    }
    const bool sym = is_symmetric(w, 1e-10);
    if (!sym) r.warnings.push_back("matrix not symmetric; reporting singular values");
    r.eigenvalues = sym ? symmetric_eigenvalues(w) : singular_values(w);

    const auto sv = singular_values(w);
    r.sigma1 = sv.empty() ? 0.0 : sv[0];
    r.sigma2 = sv.size() > 1 ? sv[1] : 0.0;

    const double sum_err = max_unit_sum_error(w);
    const bool sums_ok = sum_err <= kSumTol;
    if (!sums_ok) r.warnings.push_back("row or column sums differ from 1 by " + std::to_string(sum_err));

    const bool sigma_ok = r.sigma2 > 1e-12 && r.sigma2 < 1.0 - 1e-12;
    if (r.sigma2 <= 1e-12)
        r.warnings.push_back("sigma2 = 0 (boundary): strict condition asks sigma2 > 0");
    else if (!sigma_ok)
        r.warnings.push_back("sigma2 >= 1: consensus does not mix");

    r.condition1_ok = sums_ok && sigma_ok;
    return r;
}

Matrix matrix_power(const Matrix& w, unsigned t) {
    if (!w.square()) throw std::invalid_argument("matrix_power: matrix not square");
    Matrix result = Matrix::identity(w.rows);
    Matrix base = w;
    while (t > 0) {
        if (t & 1u) result = mat_mul(result, base);
        t >>= 1u;
        if (t > 0) base = mat_mul(base, base);
    }
    return result;
}

Matrix delta_matrix(const WeightMatrix& w, unsigned t) {
    if (t == 0) throw std::invalid_argument("delta_matrix: t must be positive");
    const Matrix j = Matrix::averaging(w.size());
    const Matrix direct = mat_sub(matrix_power(w.w, t), j);
    const Matrix via_identity = matrix_power(mat_sub(w.w, j), t);
    if (max_abs_diff(direct, via_identity) > 1e-10)
        throw std::runtime_error("delta_matrix: W^t - J and (W - J)^t disagree beyond 1e-10");
    return direct;
}

}  // namespace seqnet
