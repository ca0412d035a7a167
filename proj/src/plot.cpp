#include "dirspec/plot.hpp"

#include <sstream>

#include "dirspec/conic.hpp"

namespace dirspec {

namespace {

// fixed three-decimal rendering via integer arithmetic
std::string dec3(const Rat& r) {
    Int scaled = rat_floor(r * 1000 + make_rat(1, 2));
    bool neg = sgn(scaled) < 0;
    Int a = abs(scaled);
    Int whole = a / 1000, frac = a % 1000;
    std::string f = frac.get_str();
    while (f.size() < 3) f = "0" + f;
    return (neg ? "-" : "") + whole.get_str() + "." + f;
}

Rat approx_sqrt(const Rat& r) {
    RatInterval e = sqrt_enclosure(r, 40);
    return (e.lo + e.hi) / 2;
}

struct Canvas {
    std::ostringstream svg;
    Rat x0, x1, y0, y1;  // world window
    Rat sx, sy, ox, oy;  // world -> screen affine

    Canvas(Rat wx0, Rat wx1, Rat wy0, Rat wy1) : x0(wx0), x1(wx1), y0(wy0), y1(wy1) {
        const Rat W(840), H(540), mx(30), my(30);
        sx = W / (x1 - x0);
        sy = H / (y1 - y0);
        ox = mx - x0 * sx;
        oy = my + y1 * sy;  // screen y grows downward
        svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"900\" height=\"600\" "
               "viewBox=\"0 0 900 600\">\n";
        svg << "<rect width=\"900\" height=\"600\" fill=\"white\"/>\n";
    }
    std::string X(const Rat& wx) const { return dec3(ox + wx * sx); }
    std::string Y(const Rat& wy) const { return dec3(oy - wy * sy); }

    void line(const Rat& ax, const Rat& ay, const Rat& bx, const Rat& by,
              const std::string& style) {
        svg << "<line x1=\"" << X(ax) << "\" y1=\"" << Y(ay) << "\" x2=\"" << X(bx)
            << "\" y2=\"" << Y(by) << "\" " << style << "/>\n";
    }
    void dot(const Rat& wx, const Rat& wy, const std::string& fill, const Rat& r = make_rat(7, 2)) {
        svg << "<circle cx=\"" << X(wx) << "\" cy=\"" << Y(wy) << "\" r=\"" << dec3(r)
            << "\" fill=\"" << fill << "\"/>\n";
    }
    void poly_begin(const std::string& style) { svg << "<polyline " << style << " points=\""; }
    void poly_point(const Rat& wx, const Rat& wy) { svg << X(wx) << "," << Y(wy) << " "; }
    void poly_end() { svg << "\"/>\n"; }
    void text(int px, int py, const std::string& s) {
        svg << "<text x=\"" << px << "\" y=\"" << py << "\" font-size=\"13\" "
            << "font-family=\"monospace\">" << s << "</text>\n";
    }
    std::string finish() {
        svg << "</svg>\n";
        return svg.str();
    }
};

const std::string kThin = "stroke=\"#888\" stroke-width=\"1\" fill=\"none\"";
const std::string kBlue = "stroke=\"#1f4e9c\" stroke-width=\"1.5\" fill=\"none\"";
const std::string kBlueDash = "stroke=\"#1f4e9c\" stroke-width=\"1\" stroke-dasharray=\"5,4\" fill=\"none\"";
const std::string kGreen = "stroke=\"#1d7a3e\" stroke-width=\"1.2\" fill=\"none\"";
const std::string kRed = "stroke=\"#b02020\" stroke-width=\"2.5\" fill=\"none\"";

// tangency-plane picture for a constructed step (coordinates in units of
// the previous frame: x raw, y as y/d)
std::string plot_constructed(const ConstructionState& st, int nu) {
    Frame fr = build_frame(st.w(nu - 1), st.w(nu - 2), st.w(nu - 3));
    const StepParams& sp = st.schedule.at(nu);
    Rat q(fr.q);
    Expansion ex = expand_in_basis(st.w(nu), fr.w_nu, fr.w_nm1, fr.w_nm2);
    Rat y_over_d = abs(Rat(ex.c2) + Rat(ex.c3) * fr.f_over_d);
    Rat x2 = q * q * fr.d_sq * y_over_d;
    Rat u = Rat(st.q(nu)) * r_sq_of(st.vectors(), nu);  // = u/d of the tangency point
    Rat a = Rat(fr.a0) + Rat(sp.k) * q;
    Rat dil = 1 + sp.eps;

    Canvas cv(-(x2 / 4) - 2 * q, x2 * make_rat(5, 4) + 2 * q, make_rat(-29, 20), make_rat(19, 10));

    // lattice rows y = m d with their points x = m a0 + l q
    for (int m = -1; m <= 1; ++m) {
        cv.line(cv.x0, Rat(m), cv.x1, Rat(m), kThin);
        Rat base(m * fr.a0);
        Int l_lo = rat_ceil((cv.x0 - base) / q), l_hi = rat_floor((cv.x1 - base) / q);
        // cap the dots so huge windows stay light
        if (l_hi - l_lo <= 400)
            for (Int l = l_lo; l <= l_hi; ++l) cv.dot(base + Rat(l) * q, Rat(m), "#bbb", Rat(2));
    }

    // section ellipse and its dilation: x = x2 t +- q sqrt(1 - t^2), y/d = u t
    for (int pass = 0; pass < 2; ++pass) {
        Rat t_dil = pass == 0 ? Rat(1) : dil;
        cv.poly_begin(pass == 0 ? kBlue : kBlueDash);
        const int N = 96;
        for (int i = -N; i <= N; ++i) {
            Rat t = make_rat(i, N);
            Rat root = approx_sqrt(std::max(Rat(0), Rat(1 - t * t)));
            cv.poly_point(t_dil * (x2 * t + q * root), t_dil * u * t);
        }
        for (int i = N; i >= -N; --i) {
            Rat t = make_rat(i, N);
            Rat root = approx_sqrt(std::max(Rat(0), Rat(1 - t * t)));
            cv.poly_point(t_dil * (x2 * t - q * root), t_dil * u * t);
        }
        cv.poly_end();
    }

    // hyperbola-region boundaries through A and A' (x = a y +- q sqrt(y^2-1))
    for (int shift = 0; shift < 2; ++shift) {
        Rat as = a + Rat(shift) * q;
        for (int side = -1; side <= 1; side += 2) {
            cv.poly_begin(kGreen);
            const int N = 48;
            for (int i = 0; i <= N; ++i) {
                Rat yd = 1 + make_rat(i, N) * (make_rat(23, 20) - 1);
                Rat root = approx_sqrt(yd * yd - 1);
                cv.poly_point(as * yd + Rat(side) * q * root, yd);
            }
            cv.poly_end();
        }
    }

    // search segment at abscissa x2, y/d from alpha to omega
    cv.line(x2, sp.alpha, x2, sp.omega, kRed);

    cv.dot(Rat(0), Rat(0), "#222");
    cv.dot(q, Rat(0), "#1f4e9c");       // W
    cv.dot(a, Rat(1), "#1d7a3e");       // A
    cv.dot(a + q, Rat(1), "#1d7a3e");   // A'
    cv.dot(x2, u, "#b02020");           // accepted candidate's tangency point

    cv.text(30, 585, "step " + std::to_string(nu) + ": base-plane section; x raw, y in units of d");
    return cv.finish();
}

// profile picture for seed steps: x along the axis, y the signed component
// toward w_{nu-1}, in units of d
std::string plot_seed(const ConstructionState& st, int nu, const Int& enum_limit) {
    Canvas cv(make_rat(-1, 2), Rat(st.q(nu)) + make_rat(1, 2), Rat(-2), Rat(2));
    cv.line(cv.x0, Rat(0), cv.x1, Rat(0), kThin);

    if (nu == 1) {
        cv.dot(Rat(0), Rat(0), "#222");
        cv.dot(Rat(1), Rat(0), "#b02020");
        cv.text(30, 585, "step 1: seed vector on the axis");
        return cv.finish();
    }

    std::vector<IntVec3> ws = st.vectors();
    Rat r_sq = r_sq_of(ws, nu);
    RatVec2 v = rational_point(st.w(nu));
    // u1 = p_{nu-1} - q_{nu-1} v, |u1|^2 = r_sq; y/d of w is <p - x v, u1>/r_sq
    const IntVec3& prev = st.w(nu - 1);
    RatVec2 u1{Rat(prev.p1) - Rat(prev.q) * v.v1, Rat(prev.p2) - Rat(prev.q) * v.v2};
    auto y_over_d = [&](const IntVec3& w) -> Rat {
        Rat e1 = Rat(w.p1) - Rat(w.q) * v.v1;
        Rat e2 = Rat(w.p2) - Rat(w.q) * v.v2;
        return (e1 * u1.v1 + e2 * u1.v2) / r_sq;
    };

    // cylinder profile |y| <= d and the dilated profile
    Rat dil = 1 + st.schedule.at(nu).eps;
    for (int s = -1; s <= 1; s += 2) {
        cv.line(Rat(0), Rat(s), Rat(st.q(nu)), Rat(s), kBlue);
        cv.line(Rat(0), Rat(s) * dil, Rat(st.q(nu)), Rat(s) * dil, kBlueDash);
    }

    Cylinder cyl{v, Rat(st.q(nu)), r_sq};
    if (Rat(st.q(nu)) <= Rat(enum_limit)) {
        for (const IntVec3& w : enumerate_cylinder_points(cyl, enum_limit, dil * dil))
            cv.dot(Rat(w.q), y_over_d(w), "#555", Rat(3));
    }
    cv.dot(Rat(0), Rat(0), "#222");
    cv.dot(Rat(prev.q), y_over_d(prev), "#1d7a3e");
    cv.dot(Rat(st.q(nu)), Rat(0), "#b02020");
    IntVec3 diff = st.w(nu) - prev;
    cv.dot(Rat(diff.q), y_over_d(diff), "#1d7a3e");

    cv.text(30, 585, "step " + std::to_string(nu) +
                         ": cylinder profile; x raw, y in units of d (projection)");
    return cv.finish();
}

}  // namespace

std::string render_step_svg(const ConstructionState& st, int nu, const Int& enum_limit) {
    if (nu < 1 || nu > st.max_nu()) throw DomainError("render_step_svg: no such step");
    if (nu >= 4) return plot_constructed(st, nu);
    return plot_seed(st, nu, enum_limit);
}

}  // namespace dirspec
