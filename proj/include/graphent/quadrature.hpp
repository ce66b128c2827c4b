#pragma once

#include "graphent/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <queue>
#include <span>
#include <vector>

namespace graphent::quad {

using cplx = std::complex<double>;

struct Result {
    cplx value{};
    double error = 0.0;
    int evaluations = 0;
    int intervals = 0;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
inline constexpr std::array<double, 8> kXk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Interval {
    double a, b;
    cplx value;
    double error;
    bool operator<(const Interval& o) const { return error < o.error; }
};

template <class F>
Interval gk15(F& f, double a, double b)
{
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const cplx fc = f(center);
    cplx kronrod = fc * kWk[7];
    cplx gauss = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXk[j];
        const cplx f1 = f(center - dx);
        const cplx f2 = f(center + dx);
        kronrod += (f1 + f2) * kWk[j];
        if (j % 2 == 1)
            gauss += (f1 + f2) * kWg[j / 2];
    }
    return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

} // namespace detail

/// Globally adaptive Gauss-Kronrod (G7/K15) integration of a complex integrand
/// over the consecutive segments [breaks[i], breaks[i+1]]. The interval with the
/// largest local error is bisected until the summed error is at most
/// max(rel_tol * |I|, abs_tol).
template <class F>
Result integrate(F&& f, std::span<const double> breaks, double rel_tol, double abs_tol = 0.0,
                 int max_intervals = 4000)
{
    Result out;
    if (breaks.size() < 2)
        return out;

    std::priority_queue<detail::Interval> heap;
    cplx total{};
    double error = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        if (!(breaks[i + 1] > breaks[i]))
            continue;
        auto iv = detail::gk15(f, breaks[i], breaks[i + 1]);
        out.evaluations += 15;
        total += iv.value;
        error += iv.error;
        heap.push(iv);
    }

    while (!heap.empty() && error > std::max(rel_tol * std::abs(total), abs_tol)) {
        if (static_cast<int>(heap.size()) >= max_intervals)
            throw IntegrationFailure("adaptive quadrature did not converge within the interval limit", error);
        const auto worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b))
            throw IntegrationFailure("adaptive quadrature reached floating-point resolution", error);
        const auto left = detail::gk15(f, worst.a, mid);
        const auto right = detail::gk15(f, mid, worst.b);
        out.evaluations += 30;
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }

    // Re-sum to shed accumulated cancellation from the running updates.
    total = {};
    error = 0.0;
    out.intervals = static_cast<int>(heap.size());
    while (!heap.empty()) {
        total += heap.top().value;
        error += heap.top().error;
        heap.pop();
    }
    out.value = total;
    out.error = error;
    return out;
}

} // namespace graphent::quad
