// core.hpp — dense complex types for the four-level problem, vectorization helpers

#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>

namespace loopbloch {

inline constexpr const char* kVersion = "0.1.0";

// Levels |1>..|4> map to indices 0..3 throughout.
inline constexpr int kLevels = 4;
inline constexpr int kSuperDim = kLevels * kLevels;

template <typename Scalar> using ComplexT = std::complex<Scalar>;
template <typename Scalar> using StateVectorT = Eigen::Vector4<ComplexT<Scalar>>;
template <typename Scalar> using DensityMatrixT = Eigen::Matrix4<ComplexT<Scalar>>;
template <typename Scalar>
using GeneratorMatrixT = Eigen::Matrix<ComplexT<Scalar>, kSuperDim, kSuperDim>;
template <typename Scalar> using SuperVectorT = Eigen::Vector<ComplexT<Scalar>, kSuperDim>;

using Complex = ComplexT<double>;
using StateVector = StateVectorT<double>;
using DensityMatrix = DensityMatrixT<double>;
using GeneratorMatrix = GeneratorMatrixT<double>;
using SuperVector = SuperVectorT<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Column-stacking vectorization: vec(rho)[4*col + row] = rho(row, col).
// This is Eigen's native column-major layout, so both maps are free.
template <typename Scalar>
SuperVectorT<Scalar> vectorize(const DensityMatrixT<Scalar>& rho) {
    return Eigen::Map<const SuperVectorT<Scalar>>(rho.data());
}

template <typename Scalar>
DensityMatrixT<Scalar> devectorize(const SuperVectorT<Scalar>& v) {
    return Eigen::Map<const DensityMatrixT<Scalar>>(v.data());
}

template <typename Derived>
auto hermitized(const Eigen::MatrixBase<Derived>& m) {
    return (0.5 * (m + m.adjoint())).eval();
}

template <typename Derived>
double hermiticity_defect(const Eigen::MatrixBase<Derived>& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace loopbloch
