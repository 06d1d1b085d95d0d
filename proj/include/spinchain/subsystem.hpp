// Parameters of one qubit + open XX-chain subsystem.
//
// Site 0 is the qubit, sites 1..N the chain spins. Every bond carries an
// exchange term -2(J^x s^x s^x + J^y s^y s^y) and every site a field term
// -2 h s^z (spin-1/2 operators s = sigma/2). The qubit couples only to the
// first chain site with couplings J0_x, J0_y. Times are in units of 1/J.

#pragma once

#include <Eigen/Dense>
#include <stdexcept>

namespace spinchain {

// Error taxonomy, mapped to CLI exit codes 1 / 2 / 3.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SizeCapError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SubsystemSpec {
    int N = 0;                   // chain length (chain sites 1..N)
    double J0_x = 0.0;           // qubit-chain coupling, bond 0-1
    double J0_y = 0.0;
    double h0 = 0.0;             // qubit field
    Eigen::VectorXd J_x, J_y;    // intra-chain couplings, bond n-(n+1), n = 1..N-1
    Eigen::VectorXd h;           // chain fields, sites 1..N

    // Homogeneous chain J_x = J_y = J, h[n] = h, isotropic or anisotropic contact.
    static SubsystemSpec homogeneous(int N, double J, double h, double J0, double h0);
    static SubsystemSpec homogeneous(int N, double J, double h,
                                     double J0_x, double J0_y, double h0);

    bool chain_is_homogeneous() const;
    double chain_J() const;      // requires a homogeneous XX chain
    double chain_h() const;

    void validate() const;       // throws ConfigError
    bool operator==(const SubsystemSpec&) const;
};

} // namespace spinchain
