// Small vector types, bounding boxes and robust planar predicates.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

namespace arrange {

struct Vec2 {
    double x = 0.0, y = 0.0;

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    bool operator==(const Vec2&) const = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::sqrt(dot(a, a)); }

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3 operator+(Vec3 o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(Vec3 o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec2 xy() const { return {x, y}; }
    bool operator==(const Vec3&) const = default;
};

inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(Vec3 a, Vec3 b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }
inline Vec3 normalized(Vec3 a) {
    double n = norm(a);
    return n > 0.0 ? a * (1.0 / n) : a;
}
inline double det3(Vec3 a, Vec3 b, Vec3 c) { return dot(a, cross(b, c)); }

struct Box3 {
    Vec3 lo{std::numeric_limits<double>::max(), std::numeric_limits<double>::max(),
            std::numeric_limits<double>::max()};
    Vec3 hi{std::numeric_limits<double>::lowest(), std::numeric_limits<double>::lowest(),
            std::numeric_limits<double>::lowest()};

    void expand(Vec3 p) {
        lo.x = std::min(lo.x, p.x); lo.y = std::min(lo.y, p.y); lo.z = std::min(lo.z, p.z);
        hi.x = std::max(hi.x, p.x); hi.y = std::max(hi.y, p.y); hi.z = std::max(hi.z, p.z);
    }
    bool overlaps(const Box3& o, double pad = 0.0) const {
        return lo.x <= o.hi.x + pad && o.lo.x <= hi.x + pad &&
               lo.y <= o.hi.y + pad && o.lo.y <= hi.y + pad &&
               lo.z <= o.hi.z + pad && o.lo.z <= hi.z + pad;
    }
    bool contains(const Box3& o) const {
        return lo.x <= o.lo.x && o.hi.x <= hi.x &&
               lo.y <= o.lo.y && o.hi.y <= hi.y &&
               lo.z <= o.lo.z && o.hi.z <= hi.z;
    }
    double diagonal() const {
        if (hi.x < lo.x) return 0.0;
        return norm(hi - lo);
    }
};

// ---------------------------------------------------------------------------
// Adaptive-precision 2D orientation predicate (Shewchuk-style expansions).
// orient2d returns a value with the exact sign of the determinant
//   | ax-cx  ay-cy |
//   | bx-cx  by-cy |
// positive when a,b,c are in counterclockwise order.
// ---------------------------------------------------------------------------

namespace detail {

inline constexpr double kSplitter = 134217729.0;  // 2^27 + 1
inline constexpr double kEpsilon = 1.1102230246251565e-16;  // 2^-53
inline constexpr double kResultErrBound = (3.0 + 8.0 * kEpsilon) * kEpsilon;
inline constexpr double kCcwErrBoundA = (3.0 + 16.0 * kEpsilon) * kEpsilon;
inline constexpr double kCcwErrBoundB = (2.0 + 12.0 * kEpsilon) * kEpsilon;
inline constexpr double kCcwErrBoundC = (9.0 + 64.0 * kEpsilon) * kEpsilon * kEpsilon;

inline void fast_two_sum(double a, double b, double& x, double& y) {
    x = a + b;
    double bvirt = x - a;
    y = b - bvirt;
}

inline void two_sum(double a, double b, double& x, double& y) {
    x = a + b;
    double bvirt = x - a;
    double avirt = x - bvirt;
    double bround = b - bvirt;
    double around = a - avirt;
    y = around + bround;
}

inline void two_diff(double a, double b, double& x, double& y) {
    x = a - b;
    double bvirt = a - x;
    double avirt = x + bvirt;
    double bround = bvirt - b;
    double around = a - avirt;
    y = around + bround;
}

inline double two_diff_tail(double a, double b, double x) {
    double bvirt = a - x;
    double avirt = x + bvirt;
    double bround = bvirt - b;
    double around = a - avirt;
    return around + bround;
}

inline void split_double(double a, double& hi, double& lo) {
    double c = kSplitter * a;
    double abig = c - a;
    hi = c - abig;
    lo = a - hi;
}

inline void two_product(double a, double b, double& x, double& y) {
    x = a * b;
    double ahi, alo, bhi, blo;
    split_double(a, ahi, alo);
    split_double(b, bhi, blo);
    double err1 = x - (ahi * bhi);
    double err2 = err1 - (alo * bhi);
    double err3 = err2 - (ahi * blo);
    y = (alo * blo) - err3;
}

inline void two_one_diff(double a1, double a0, double b, double& x2, double& x1, double& x0) {
    double i;
    two_diff(a0, b, i, x0);
    two_sum(a1, i, x2, x1);
}

inline void two_two_diff(double a1, double a0, double b1, double b0,
                         double& x3, double& x2, double& x1, double& x0) {
    double j, t;
    two_one_diff(a1, a0, b0, j, t, x0);
    two_one_diff(j, t, b1, x3, x2, x1);
}

// Merges two nonoverlapping expansions, eliminating zero components.
inline int fast_expansion_sum_zeroelim(int elen, const double* e, int flen, const double* f,
                                       double* h) {
    int ei = 0, fi = 0, hi = 0;
    double q, qnew, hh;
    auto take_e = [&]() {
        if (fi >= flen) return true;
        if (ei >= elen) return false;
        return (f[fi] > e[ei]) == (f[fi] > -e[ei]);
    };
    q = take_e() ? e[ei++] : f[fi++];
    bool first = true;
    while (ei < elen || fi < flen) {
        double v = take_e() ? e[ei++] : f[fi++];
        if (first) {
            fast_two_sum(v, q, qnew, hh);
            first = false;
        } else {
            two_sum(q, v, qnew, hh);
        }
        q = qnew;
        if (hh != 0.0) h[hi++] = hh;
    }
    if (q != 0.0 || hi == 0) h[hi++] = q;
    return hi;
}

inline double expansion_estimate(int elen, const double* e) {
    double q = e[0];
    for (int i = 1; i < elen; ++i) q += e[i];
    return q;
}

inline double orient2d_adapt(Vec2 pa, Vec2 pb, Vec2 pc, double detsum) {
    double acx = pa.x - pc.x;
    double bcx = pb.x - pc.x;
    double acy = pa.y - pc.y;
    double bcy = pb.y - pc.y;

    double detleft, detlefttail, detright, detrighttail;
    two_product(acx, bcy, detleft, detlefttail);
    two_product(acy, bcx, detright, detrighttail);

    double b[4], b3;
    two_two_diff(detleft, detlefttail, detright, detrighttail, b3, b[2], b[1], b[0]);
    b[3] = b3;

    double det = expansion_estimate(4, b);
    double errbound = kCcwErrBoundB * detsum;
    if (det >= errbound || -det >= errbound) return det;

    double acxtail = two_diff_tail(pa.x, pc.x, acx);
    double bcxtail = two_diff_tail(pb.x, pc.x, bcx);
    double acytail = two_diff_tail(pa.y, pc.y, acy);
    double bcytail = two_diff_tail(pb.y, pc.y, bcy);
    if (acxtail == 0.0 && acytail == 0.0 && bcxtail == 0.0 && bcytail == 0.0) return det;

    errbound = kCcwErrBoundC * detsum + kResultErrBound * std::fabs(det);
    det += (acx * bcytail + bcy * acxtail) - (acy * bcxtail + bcx * acytail);
    if (det >= errbound || -det >= errbound) return det;

    double u[4], u3, s1, s0, t1, t0;
    double c1[8], c2[12], d[16];

    two_product(acxtail, bcy, s1, s0);
    two_product(acytail, bcx, t1, t0);
    two_two_diff(s1, s0, t1, t0, u3, u[2], u[1], u[0]);
    u[3] = u3;
    int c1len = fast_expansion_sum_zeroelim(4, b, 4, u, c1);

    two_product(acx, bcytail, s1, s0);
    two_product(acy, bcxtail, t1, t0);
    two_two_diff(s1, s0, t1, t0, u3, u[2], u[1], u[0]);
    u[3] = u3;
    int c2len = fast_expansion_sum_zeroelim(c1len, c1, 4, u, c2);

    two_product(acxtail, bcytail, s1, s0);
    two_product(acytail, bcxtail, t1, t0);
    two_two_diff(s1, s0, t1, t0, u3, u[2], u[1], u[0]);
    u[3] = u3;
    int dlen = fast_expansion_sum_zeroelim(c2len, c2, 4, u, d);

    return d[dlen - 1];
}

}  // namespace detail

inline double orient2d(Vec2 pa, Vec2 pb, Vec2 pc) {
    double detleft = (pa.x - pc.x) * (pb.y - pc.y);
    double detright = (pa.y - pc.y) * (pb.x - pc.x);
    double det = detleft - detright;
    double detsum;

    if (detleft > 0.0) {
        if (detright <= 0.0) return det;
        detsum = detleft + detright;
    } else if (detleft < 0.0) {
        if (detright >= 0.0) return det;
        detsum = -detleft - detright;
    } else {
        return det;
    }
    double errbound = detail::kCcwErrBoundA * detsum;
    if (det >= errbound || -det >= errbound) return det;
    return detail::orient2d_adapt(pa, pb, pc, detsum);
}

inline int orient2d_sign(Vec2 pa, Vec2 pb, Vec2 pc) {
    double d = orient2d(pa, pb, pc);
    return (d > 0.0) - (d < 0.0);
}

// Squared distance from p to segment [a,b].
inline double point_segment_dist2(Vec2 p, Vec2 a, Vec2 b) {
    Vec2 ab = b - a;
    double len2 = dot(ab, ab);
    if (len2 == 0.0) {
        Vec2 d = p - a;
        return dot(d, d);
    }
    double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
    Vec2 q = a + ab * t;
    Vec2 d = p - q;
    return dot(d, d);
}

// Exact test: p lies on the closed segment [a,b].
inline bool point_on_segment(Vec2 p, Vec2 a, Vec2 b) {
    if (orient2d(a, b, p) != 0.0) return false;
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

}  // namespace arrange
