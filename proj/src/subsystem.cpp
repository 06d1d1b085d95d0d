#include "spinchain/subsystem.hpp"

#include <cmath>
#include <string>

namespace spinchain {

SubsystemSpec SubsystemSpec::homogeneous(int N, double J, double h, double J0, double h0) {
    return homogeneous(N, J, h, J0, J0, h0);
}

SubsystemSpec SubsystemSpec::homogeneous(int N, double J, double h,
                                         double J0_x, double J0_y, double h0) {
    SubsystemSpec s;
    s.N = N;
    s.J0_x = J0_x;
    s.J0_y = J0_y;
    s.h0 = h0;
    s.J_x = Eigen::VectorXd::Constant(std::max(N - 1, 0), J);
    s.J_y = s.J_x;
    s.h = Eigen::VectorXd::Constant(N, h);
    s.validate();
    return s;
}

bool SubsystemSpec::chain_is_homogeneous() const {
    if (N >= 2) {
        const double J = J_x(0);
        if ((J_x.array() != J).any() || (J_y.array() != J).any()) return false;
    }
    return N < 1 || (h.array() == h(0)).all();
}

double SubsystemSpec::chain_J() const {
    if (!chain_is_homogeneous())
        throw ConfigError("chain_J: chain is not homogeneous");
    return N >= 2 ? J_x(0) : 0.0;
}

double SubsystemSpec::chain_h() const {
    if (!chain_is_homogeneous())
        throw ConfigError("chain_h: chain is not homogeneous");
    return N >= 1 ? h(0) : 0.0;
}

void SubsystemSpec::validate() const {
    if (N < 1) throw ConfigError("SubsystemSpec: N must be >= 1");
    if (J_x.size() != N - 1 || J_y.size() != N - 1)
        throw ConfigError("SubsystemSpec: J_x, J_y must have N-1 entries (got " +
                          std::to_string(J_x.size()) + ", " + std::to_string(J_y.size()) +
                          " for N = " + std::to_string(N) + ")");
    if (h.size() != N)
        throw ConfigError("SubsystemSpec: h must have N entries");
    auto finite = [](double x) { return std::isfinite(x); };
    if (!finite(J0_x) || !finite(J0_y) || !finite(h0) ||
        !J_x.allFinite() || !J_y.allFinite() || !h.allFinite())
        throw ConfigError("SubsystemSpec: couplings and fields must be finite");
}

bool SubsystemSpec::operator==(const SubsystemSpec& o) const {
    auto same = [](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
        return a.size() == b.size() && (a.array() == b.array()).all();
    };
    return N == o.N && J0_x == o.J0_x && J0_y == o.J0_y && h0 == o.h0 &&
           same(J_x, o.J_x) && same(J_y, o.J_y) && same(h, o.h);
}

} // namespace spinchain
