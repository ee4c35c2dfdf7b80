// Shared aliases, error types and small numeric helpers.
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace qspin {

using Complex    = std::complex<double>;
using Matrix     = Eigen::MatrixXcd;
using Vector     = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

constexpr double kPi = 3.14159265358979323846;

// Guard on q-number denominators; values of gamma where a construction
// denominator falls below this are rejected loudly.
constexpr double kSingularGuard = 1e-8;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : Error { using Error::Error; };
struct SingularGamma : Error { using Error::Error; };
struct IndexError : Error { using Error::Error; };
struct ConvergenceError : Error { using Error::Error; };
struct NotDiagonalizable : Error { using Error::Error; };
struct FitError : Error { using Error::Error; };
struct NotQuasiHermitian : Error { using Error::Error; };
struct IllConditioned : Error { using Error::Error; };
struct BadBlock : Error { using Error::Error; };
struct DegenerateSpectrum : Error { using Error::Error; };
struct UnknownIdentity : Error { using Error::Error; };

inline Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// ||A - B||_F / max(1, ||A||_F, ||B||_F)
inline double relative_residual(const Matrix& a, const Matrix& b) {
    const double scale = std::max({1.0, a.norm(), b.norm()});
    return (a - b).norm() / scale;
}

inline double commutator_residual(const Matrix& a, const Matrix& b) {
    return relative_residual(a * b, b * a);
}

// Deterministic uniform sampling: mt19937_64 plus an explicit 53-bit
// mapping, so reports are reproducible across standard libraries.
class DetRng {
public:
    explicit DetRng(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    int uniform_int(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    Complex unit_complex() {
        const double phase = uniform(0.0, 2.0 * kPi);
        return {std::cos(phase), std::sin(phase)};
    }

    Matrix complex_matrix(int rows, int cols, double amplitude = 1.0) {
        Matrix m(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                m(i, j) = amplitude * Complex(uniform(-1.0, 1.0), uniform(-1.0, 1.0));
        return m;
    }

private:
    std::mt19937_64 engine_;
};

inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

// Index-parallel loop with deterministic output placement. jobs <= 1 runs inline.
inline void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& body) {
    if (jobs <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    const int workers = std::min<std::size_t>(jobs, count);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += workers) body(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace qspin
