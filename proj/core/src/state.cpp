#include "qrao/state.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace qrao {

namespace {

constexpr int kMaxQubitsPure = 24;
constexpr int kMaxQubitsDense = 14;

void check_qubit(int num_qubits, int qubit) {
    if (qubit < 0 || qubit >= num_qubits) {
        throw std::invalid_argument("qubit index " + std::to_string(qubit) + " out of range");
    }
}

// Generator phases for a single-qubit Pauli G: G|b> = phi(b_q) |b ^ flip>.
struct GeneratorAction {
    bool flips = false;
    complex_t phi0{1.0, 0.0};
    complex_t phi1{1.0, 0.0};
};

GeneratorAction generator_action(PauliAxis axis) {
    switch (axis) {
        case PauliAxis::X: return {true, {1, 0}, {1, 0}};
        case PauliAxis::Y: return {true, {0, 1}, {0, -1}};
        case PauliAxis::Z: return {false, {1, 0}, {-1, 0}};
    }
    throw std::logic_error("invalid PauliAxis");
}

// Removes bits q0 < q1 from an index and compacts the remainder.
struct BitStripper {
    int q0, q1;
    std::uint64_t low_mask, mid_mask;

    BitStripper(int a, int b) : q0(a < b ? a : b), q1(a < b ? b : a) {
        low_mask = (std::uint64_t{1} << q0) - 1;
        mid_mask = ((std::uint64_t{1} << (q1 - q0 - 1)) - 1) << (q0 + 1);
    }
    std::uint64_t strip(std::uint64_t x) const {
        return (x & low_mask) | ((x & mid_mask) >> 1) | ((x >> (q1 + 1)) << (q1 - 1));
    }
    std::uint64_t insert(std::uint64_t stripped, std::uint64_t pair_bits) const {
        const std::uint64_t low = stripped & low_mask;
        const std::uint64_t mid = ((stripped >> q0) & (mid_mask >> (q0 + 1))) << (q0 + 1);
        const std::uint64_t high = (stripped >> (q1 - 1)) << (q1 + 1);
        return low | mid | high | pair_bits;
    }
};

}  // namespace

StateVector StateVector::zero(int num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubitsPure) {
        throw std::invalid_argument("StateVector: unsupported qubit count " +
                                    std::to_string(num_qubits));
    }
    StateVector psi;
    psi.num_qubits = num_qubits;
    psi.amps.assign(std::size_t{1} << num_qubits, complex_t{0.0, 0.0});
    psi.amps[0] = 1.0;
    return psi;
}

double StateVector::norm() const {
    double s = 0.0;
    for (const auto& a : amps) s += std::norm(a);
    return std::sqrt(s);
}

void StateVector::normalize() {
    const double n = norm();
    if (n <= 0.0) {
        throw std::runtime_error("StateVector: cannot normalize zero vector");
    }
    const double inv = 1.0 / n;
    for (auto& a : amps) a *= inv;
}

DensityMatrix DensityMatrix::zero_state(int num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubitsDense) {
        throw std::invalid_argument("DensityMatrix: unsupported qubit count " +
                                    std::to_string(num_qubits));
    }
    DensityMatrix rho;
    rho.num_qubits = num_qubits;
    const std::size_t d = rho.dim();
    rho.data.assign(d * d, complex_t{0.0, 0.0});
    rho.data[0] = 1.0;
    return rho;
}

DensityMatrix DensityMatrix::maximally_mixed(int num_qubits) {
    DensityMatrix rho = zero_state(num_qubits);
    const std::size_t d = rho.dim();
    rho.data[0] = 0.0;
    const double p = 1.0 / static_cast<double>(d);
    for (std::size_t i = 0; i < d; ++i) rho.data[i * d + i] = p;
    return rho;
}

DensityMatrix DensityMatrix::from_pure(const StateVector& psi) {
    DensityMatrix rho;
    rho.num_qubits = psi.num_qubits;
    const std::size_t d = psi.dim();
    rho.data.resize(d * d);
    for (std::size_t r = 0; r < d; ++r) {
        const complex_t ar = psi.amps[r];
        complex_t* row = rho.data.data() + r * d;
        for (std::size_t c = 0; c < d; ++c) {
            row[c] = ar * std::conj(psi.amps[c]);
        }
    }
    return rho;
}

double DensityMatrix::trace_real() const {
    const std::size_t d = dim();
    double t = 0.0;
    for (std::size_t i = 0; i < d; ++i) t += data[i * d + i].real();
    return t;
}

double DensityMatrix::hermiticity_error() const {
    const std::size_t d = dim();
    double worst = 0.0;
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = r; c < d; ++c) {
            worst = std::max(worst, std::abs(at(r, c) - std::conj(at(c, r))));
        }
    }
    return worst;
}

void DensityMatrix::rescale(double factor) {
    for (auto& z : data) z *= factor;
}

int state_num_qubits(const QuantumState& s) {
    return std::visit([](const auto& x) { return x.num_qubits; }, s);
}

DensityMatrix to_density(const QuantumState& s) {
    if (std::holds_alternative<StateVector>(s)) {
        return DensityMatrix::from_pure(std::get<StateVector>(s));
    }
    return std::get<DensityMatrix>(s);
}

void apply_1q(StateVector& psi, int qubit, const Mat2& m) {
    check_qubit(psi.num_qubits, qubit);
    const std::size_t d = psi.dim();
    const std::size_t mask = std::size_t{1} << qubit;
    for (std::size_t i = 0; i < d; ++i) {
        if (i & mask) continue;
        const std::size_t j = i | mask;
        const complex_t a = psi.amps[i];
        const complex_t b = psi.amps[j];
        psi.amps[i] = m[0] * a + m[1] * b;
        psi.amps[j] = m[2] * a + m[3] * b;
    }
}

void apply_cnot(StateVector& psi, int control, int target) {
    check_qubit(psi.num_qubits, control);
    check_qubit(psi.num_qubits, target);
    if (control == target) {
        throw std::invalid_argument("cnot: control equals target");
    }
    const std::size_t d = psi.dim();
    const std::size_t cm = std::size_t{1} << control;
    const std::size_t tm = std::size_t{1} << target;
    for (std::size_t i = 0; i < d; ++i) {
        if ((i & cm) && !(i & tm)) {
            std::swap(psi.amps[i], psi.amps[i | tm]);
        }
    }
}

void apply_1q(DensityMatrix& rho, int qubit, const Mat2& m) {
    check_qubit(rho.num_qubits, qubit);
    const std::size_t d = rho.dim();
    const std::size_t mask = std::size_t{1} << qubit;
    const complex_t m00 = m[0], m01 = m[1], m10 = m[2], m11 = m[3];
    const complex_t c00 = std::conj(m00), c01 = std::conj(m01);
    const complex_t c10 = std::conj(m10), c11 = std::conj(m11);
    for (std::size_t r = 0; r < d; ++r) {
        if (r & mask) continue;
        complex_t* row0 = rho.data.data() + r * d;
        complex_t* row1 = rho.data.data() + (r | mask) * d;
        for (std::size_t c = 0; c < d; ++c) {
            if (c & mask) continue;
            const std::size_t c1 = c | mask;
            const complex_t a = row0[c], b = row0[c1];
            const complex_t e = row1[c], f = row1[c1];
            // rows by M
            const complex_t t00 = m00 * a + m01 * e;
            const complex_t t01 = m00 * b + m01 * f;
            const complex_t t10 = m10 * a + m11 * e;
            const complex_t t11 = m10 * b + m11 * f;
            // columns by M^dagger
            row0[c] = t00 * c00 + t01 * c01;
            row0[c1] = t00 * c10 + t01 * c11;
            row1[c] = t10 * c00 + t11 * c01;
            row1[c1] = t10 * c10 + t11 * c11;
        }
    }
}

void apply_cnot(DensityMatrix& rho, int control, int target) {
    check_qubit(rho.num_qubits, control);
    check_qubit(rho.num_qubits, target);
    if (control == target) {
        throw std::invalid_argument("cnot: control equals target");
    }
    const std::size_t d = rho.dim();
    const std::size_t cm = std::size_t{1} << control;
    const std::size_t tm = std::size_t{1} << target;
    auto perm = [&](std::size_t i) { return (i & cm) ? (i ^ tm) : i; };
    for (std::size_t r = 0; r < d; ++r) {
        const std::size_t r2 = perm(r);
        if (r2 < r) continue;
        if (r2 == r) {
            complex_t* row = rho.data.data() + r * d;
            for (std::size_t c = 0; c < d; ++c) {
                const std::size_t c2 = perm(c);
                if (c2 > c) std::swap(row[c], row[c2]);
            }
        } else {
            complex_t* row = rho.data.data() + r * d;
            complex_t* row2 = rho.data.data() + r2 * d;
            for (std::size_t c = 0; c < d; ++c) {
                std::swap(row[c], row2[perm(c)]);
            }
        }
    }
}

void depolarize_two_qubit(DensityMatrix& rho, int q0, int q1, double eps) {
    check_qubit(rho.num_qubits, q0);
    check_qubit(rho.num_qubits, q1);
    if (q0 == q1) {
        throw std::invalid_argument("depolarize_two_qubit: qubits must differ");
    }
    if (eps < 0.0 || eps > 1.0) {
        throw std::invalid_argument("depolarize_two_qubit: eps outside [0, 1]");
    }
    if (eps == 0.0) return;
    if (rho.num_qubits < 2) {
        throw std::invalid_argument("depolarize_two_qubit: needs >= 2 qubits");
    }

    const std::size_t d = rho.dim();
    const BitStripper bits(q0, q1);
    const std::size_t ds = d >> 2;
    const std::uint64_t patterns[4] = {0, std::uint64_t{1} << bits.q0, std::uint64_t{1} << bits.q1,
                                       (std::uint64_t{1} << bits.q0) | (std::uint64_t{1} << bits.q1)};

    std::vector<complex_t> sigma(ds * ds, complex_t{0.0, 0.0});
    for (std::size_t rs = 0; rs < ds; ++rs) {
        for (std::size_t cs = 0; cs < ds; ++cs) {
            complex_t acc{0.0, 0.0};
            for (const std::uint64_t a : patterns) {
                acc += rho.at(bits.insert(rs, a), bits.insert(cs, a));
            }
            sigma[rs * ds + cs] = acc;
        }
    }

    rho.rescale(1.0 - eps);
    const double w = eps * 0.25;
    for (std::size_t rs = 0; rs < ds; ++rs) {
        for (std::size_t cs = 0; cs < ds; ++cs) {
            const complex_t add = w * sigma[rs * ds + cs];
            for (const std::uint64_t a : patterns) {
                rho.at(bits.insert(rs, a), bits.insert(cs, a)) += add;
            }
        }
    }
}

void depolarize_two_qubit_inverse(DensityMatrix& rho, int q0, int q1, double eps) {
    check_qubit(rho.num_qubits, q0);
    check_qubit(rho.num_qubits, q1);
    if (q0 == q1) {
        throw std::invalid_argument("depolarize_two_qubit_inverse: qubits must differ");
    }
    if (eps < 0.0 || eps >= 1.0) {
        throw std::invalid_argument("depolarize_two_qubit_inverse: eps outside [0, 1)");
    }
    if (eps == 0.0) return;

    const std::size_t d = rho.dim();
    const BitStripper bits(q0, q1);
    const std::size_t ds = d >> 2;
    const std::uint64_t patterns[4] = {0, std::uint64_t{1} << bits.q0, std::uint64_t{1} << bits.q1,
                                       (std::uint64_t{1} << bits.q0) | (std::uint64_t{1} << bits.q1)};

    std::vector<complex_t> sigma(ds * ds, complex_t{0.0, 0.0});
    for (std::size_t rs = 0; rs < ds; ++rs) {
        for (std::size_t cs = 0; cs < ds; ++cs) {
            complex_t acc{0.0, 0.0};
            for (const std::uint64_t a : patterns) {
                acc += rho.at(bits.insert(rs, a), bits.insert(cs, a));
            }
            sigma[rs * ds + cs] = acc;
        }
    }

    const double inv = 1.0 / (1.0 - eps);
    rho.rescale(inv);
    const double w = eps * 0.25 * inv;
    for (std::size_t rs = 0; rs < ds; ++rs) {
        for (std::size_t cs = 0; cs < ds; ++cs) {
            const complex_t sub = w * sigma[rs * ds + cs];
            for (const std::uint64_t a : patterns) {
                rho.at(bits.insert(rs, a), bits.insert(cs, a)) -= sub;
            }
        }
    }
}

void global_depolarize_inplace(DensityMatrix& rho, double p, long applications) {
    if (p < 0.0 || p > 1.0) {
        throw std::invalid_argument("global_depolarize: p outside [0, 1]");
    }
    if (applications < 0) {
        throw std::invalid_argument("global_depolarize: negative application count");
    }
    if (applications == 0) return;
    const double survive = std::pow(p, static_cast<double>(applications));
    const std::size_t d = rho.dim();
    rho.rescale(survive);
    const double fill = (1.0 - survive) / static_cast<double>(d);
    for (std::size_t i = 0; i < d; ++i) rho.data[i * d + i] += fill;
}

double expectation(const StateVector& psi, const PauliString& p) {
    if (p.num_qubits != psi.num_qubits) {
        throw std::invalid_argument("expectation: qubit count mismatch");
    }
    const PauliAction act(p);
    const std::size_t d = psi.dim();
    complex_t acc{0.0, 0.0};
    for (std::size_t j = 0; j < d; ++j) {
        acc += std::conj(psi.amps[j ^ act.flip_mask]) * act.phase(j) * psi.amps[j];
    }
    return acc.real();
}

double expectation(const DensityMatrix& rho, const PauliString& p) {
    if (p.num_qubits != rho.num_qubits) {
        throw std::invalid_argument("expectation: qubit count mismatch");
    }
    const PauliAction act(p);
    const std::size_t d = rho.dim();
    complex_t acc{0.0, 0.0};
    // Tr(P rho) = sum_k phase(k) rho[k, k ^ flip]
    for (std::size_t k = 0; k < d; ++k) {
        acc += act.phase(k) * rho.at(k, k ^ act.flip_mask);
    }
    return acc.real();
}

double expectation(const QuantumState& s, const PauliString& p) {
    return std::visit([&](const auto& x) { return expectation(x, p); }, s);
}

double trace_product_real(const DensityMatrix& a, const DensityMatrix& b) {
    if (a.num_qubits != b.num_qubits) {
        throw std::invalid_argument("trace_product: dimension mismatch");
    }
    const std::size_t n = a.data.size();
    double acc = 0.0;
    // Tr(AB) = sum_{r,c} A[r,c] conj(B[r,c]) for Hermitian A, B
    for (std::size_t i = 0; i < n; ++i) {
        acc += a.data[i].real() * b.data[i].real() + a.data[i].imag() * b.data[i].imag();
    }
    return acc;
}

double RotationTraces::energy_at(double theta) const {
    return 0.5 * (t_id + t_conj) + 0.5 * std::cos(theta) * (t_id - t_conj) +
           0.5 * std::sin(theta) * t_cross;
}

RotationTraces rotation_traces(const DensityMatrix& observable, const DensityMatrix& rho,
                               int qubit, PauliAxis generator) {
    if (observable.num_qubits != rho.num_qubits) {
        throw std::invalid_argument("rotation_traces: dimension mismatch");
    }
    check_qubit(rho.num_qubits, qubit);
    const std::size_t d = rho.dim();
    const GeneratorAction g = generator_action(generator);

    complex_t t_id{0.0, 0.0}, t_conj{0.0, 0.0}, t_cross{0.0, 0.0};

    if (!g.flips) {
        // Diagonal generator (Z): sigma = +-1 per index bit.
        const std::size_t mask = std::size_t{1} << qubit;
        for (std::size_t r = 0; r < d; ++r) {
            const double sr = (r & mask) ? -1.0 : 1.0;
            const complex_t* hrow = observable.data.data() + r * d;
            const complex_t* prow = rho.data.data() + r * d;
            for (std::size_t c = 0; c < d; ++c) {
                const double sc = (c & mask) ? -1.0 : 1.0;
                const complex_t hp = hrow[c] * std::conj(prow[c]);
                t_id += hp;
                t_conj += (sr * sc) * hp;
                t_cross += complex_t{0.0, 1.0} * (sr - sc) * hp;
            }
        }
    } else {
        const std::size_t mask = std::size_t{1} << qubit;
        const complex_t phi0 = g.phi0, phi1 = g.phi1;
        for (std::size_t r = 0; r < d; ++r) {
            if (r & mask) continue;
            const std::size_t r1 = r | mask;
            const complex_t* h0 = observable.data.data() + r * d;
            const complex_t* h1 = observable.data.data() + r1 * d;
            const complex_t* p0 = rho.data.data() + r * d;
            const complex_t* p1 = rho.data.data() + r1 * d;
            for (std::size_t c = 0; c < d; ++c) {
                if (c & mask) continue;
                const std::size_t c1 = c | mask;
                const complex_t h00 = h0[c], h01 = h0[c1], h10 = h1[c], h11 = h1[c1];
                const complex_t q00 = std::conj(p0[c]), q01 = std::conj(p0[c1]);
                const complex_t q10 = std::conj(p1[c]), q11 = std::conj(p1[c1]);

                t_id += h00 * q00 + h01 * q01 + h10 * q10 + h11 * q11;

                // Tr(H G rho G): (G rho G)_{c,r} = phi(c^f) phi(r) conj(rho[r^f, c^f])
                t_conj += h00 * (phi1 * phi0) * q11 + h01 * (phi0 * phi0) * q10 +
                          h10 * (phi1 * phi1) * q01 + h11 * (phi0 * phi1) * q00;

                // i Tr(H (rho G - G rho))
                t_cross += complex_t{0.0, 1.0} *
                           (h00 * (q10 * phi0 - phi1 * q01) + h01 * (q11 * phi0 - phi0 * q00) +
                            h10 * (q00 * phi1 - phi1 * q11) + h11 * (q01 * phi1 - phi0 * q10));
            }
        }
    }

    RotationTraces out;
    out.t_id = t_id.real();
    out.t_conj = t_conj.real();
    out.t_cross = t_cross.real();
    return out;
}

std::vector<double> basis_probabilities(const StateVector& psi) {
    std::vector<double> probs(psi.dim());
    for (std::size_t i = 0; i < probs.size(); ++i) probs[i] = std::norm(psi.amps[i]);
    return probs;
}

std::vector<double> basis_probabilities(const DensityMatrix& rho) {
    const std::size_t d = rho.dim();
    std::vector<double> probs(d);
    for (std::size_t i = 0; i < d; ++i) probs[i] = std::max(0.0, rho.at(i, i).real());
    return probs;
}

std::vector<double> basis_probabilities(const QuantumState& s) {
    return std::visit([](const auto& x) { return basis_probabilities(x); }, s);
}

double min_eigenvalue(const DensityMatrix& rho) {
    const auto d = static_cast<Eigen::Index>(rho.dim());
    Eigen::MatrixXcd m(d, d);
    for (Eigen::Index r = 0; r < d; ++r) {
        for (Eigen::Index c = 0; c < d; ++c) {
            m(r, c) = rho.at(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

}  // namespace qrao
