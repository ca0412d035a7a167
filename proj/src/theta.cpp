#include "dirspec/engine.hpp"

namespace dirspec {

ThetaEnclosure theta_enclosure(const ConstructionState& st, int nu, unsigned extra_bits) {
    if (nu < 2 || nu > st.max_nu())
        throw DomainError("theta_enclosure needs a step with R_nu defined");
    std::vector<IntVec3> ws = st.vectors();
    Rat r_sq = r_sq_of(ws, nu);
    // radius eps_nu R_nu / (2 q_nu), rounded outward
    ScaledValue half_width{st.schedule.at(nu).eps / (2 * Rat(st.q(nu)))};

    ThetaEnclosure enc;
    enc.nu = nu;
    enc.center = rational_point(st.w(nu));
    enc.radius = half_width.enclose(r_sq, 64 + extra_bits).hi;
    enc.box = {RatInterval(enc.center.v1 - enc.radius, enc.center.v1 + enc.radius),
               RatInterval(enc.center.v2 - enc.radius, enc.center.v2 + enc.radius)};
    return enc;
}

}  // namespace dirspec
