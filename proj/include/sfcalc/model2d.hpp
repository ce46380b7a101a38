#pragma once

#include "sfcalc/qmatrix.hpp"

// Built-in two-dimensional model operator with S-spectrum {0} u S: the
// eigenvector (1, I)^T is annihilated and (J, -K)^T is mapped to itself
// times I on the right.  Its spectral projections and the left/right
// calculus values of the locally constant function J*chi_{U_0} have
// closed forms, used by the reproduce-example task and the acceptance
// suite.
namespace sfcalc::model2d {

inline QMatrix op() {
    QMatrix t(2);
    t(0, 0) = {0, -0.5, 0, 0};
    t(0, 1) = {0.5, 0, 0, 0};
    t(1, 0) = {-0.5, 0, 0, 0};
    t(1, 1) = {0, -0.5, 0, 0};
    return t;
}

inline std::vector<Sphere> spectrum() { return {{0.0, 0.0}, {0.0, 1.0}}; }

/// E_{0} = 1/2 [[1, -I], [I, 1]]
inline QMatrix projection_zero() {
    QMatrix e(2);
    e(0, 0) = {0.5, 0, 0, 0};
    e(0, 1) = {0, -0.5, 0, 0};
    e(1, 0) = {0, 0.5, 0, 0};
    e(1, 1) = {0.5, 0, 0, 0};
    return e;
}

/// E_{S} = 1/2 [[1, I], [-I, 1]]
inline QMatrix projection_sphere() {
    QMatrix e(2);
    e(0, 0) = {0.5, 0, 0, 0};
    e(0, 1) = {0, 0.5, 0, 0};
    e(1, 0) = {0, -0.5, 0, 0};
    e(1, 1) = {0.5, 0, 0, 0};
    return e;
}

/// left calculus of J*chi_{U_0}: 1/2 [[J, -K], [K, J]]
inline QMatrix left_indicator_j() {
    QMatrix m(2);
    m(0, 0) = {0, 0, 0.5, 0};
    m(0, 1) = {0, 0, 0, -0.5};
    m(1, 0) = {0, 0, 0, 0.5};
    m(1, 1) = {0, 0, 0.5, 0};
    return m;
}

/// right calculus of J*chi_{U_0}: 1/2 [[J, K], [-K, J]]
inline QMatrix right_indicator_j() {
    QMatrix m(2);
    m(0, 0) = {0, 0, 0.5, 0};
    m(0, 1) = {0, 0, 0, 0.5};
    m(1, 0) = {0, 0, 0, -0.5};
    m(1, 1) = {0, 0, 0.5, 0};
    return m;
}

} // namespace sfcalc::model2d
