#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <variant>
#include <vector>

#include "qrao/pauli.hpp"

namespace qrao {

using complex_t = std::complex<double>;

// 2x2 single-qubit operator, row-major {m00, m01, m10, m11}. Not
// required to be unitary (measurement projectors reuse the same kernels).
using Mat2 = std::array<complex_t, 4>;

struct StateVector {
    std::vector<complex_t> amps;
    int num_qubits = 0;

    static StateVector zero(int num_qubits);
    std::size_t dim() const { return std::size_t{1} << num_qubits; }
    double norm() const;
    void normalize();
};

// Dense density matrix, row-major 2^n x 2^n. Qubit q maps to bit q of
// the row/column index.
struct DensityMatrix {
    std::vector<complex_t> data;
    int num_qubits = 0;

    static DensityMatrix zero_state(int num_qubits);
    static DensityMatrix maximally_mixed(int num_qubits);
    static DensityMatrix from_pure(const StateVector& psi);

    std::size_t dim() const { return std::size_t{1} << num_qubits; }
    complex_t& at(std::size_t r, std::size_t c) { return data[r * dim() + c]; }
    const complex_t& at(std::size_t r, std::size_t c) const { return data[r * dim() + c]; }

    double trace_real() const;
    double hermiticity_error() const;
    void rescale(double factor);
};

// Candidate states flow through VQE and rounding as either backend.
using QuantumState = std::variant<StateVector, DensityMatrix>;

int state_num_qubits(const QuantumState& s);
DensityMatrix to_density(const QuantumState& s);

// --- gate kernels -----------------------------------------------------

void apply_1q(StateVector& psi, int qubit, const Mat2& m);
void apply_cnot(StateVector& psi, int control, int target);

// rho -> M rho M^dagger (fused single pass).
void apply_1q(DensityMatrix& rho, int qubit, const Mat2& m);
void apply_cnot(DensityMatrix& rho, int control, int target);

// --- depolarizing channels ---------------------------------------------

// rho -> (1-eps) rho + eps (I/4 (x) Tr_pair rho) on the given qubit pair.
// The map is self-adjoint, so the same kernel transports observables.
void depolarize_two_qubit(DensityMatrix& rho, int q0, int q1, double eps);

// Inverse map, used to push Heisenberg-picture observables forward past
// a noisy gate. Requires eps < 1.
void depolarize_two_qubit_inverse(DensityMatrix& rho, int q0, int q1, double eps);

// rho -> p^N rho + (1 - p^N) I/2^n  (in place).
void global_depolarize_inplace(DensityMatrix& rho, double p, long applications);

// --- expectations -------------------------------------------------------

double expectation(const StateVector& psi, const PauliString& p);
double expectation(const DensityMatrix& rho, const PauliString& p);
double expectation(const QuantumState& s, const PauliString& p);

// Re Tr(A * B) for Hermitian A, B of equal dimension.
double trace_product_real(const DensityMatrix& a, const DensityMatrix& b);

// Traces needed for the analytic single-angle energy profile through a
// rotation gate with Pauli generator G on `qubit`:
//   t_id    = Tr(H rho)
//   t_conj  = Tr(H G rho G)
//   t_cross = i Tr(H (rho G - G rho))
// The energy after R(theta) = exp(-i theta G / 2) is
//   E(theta) = (t_id + t_conj)/2 + cos(theta) (t_id - t_conj)/2
//            + sin(theta) t_cross/2.
struct RotationTraces {
    double t_id = 0.0;
    double t_conj = 0.0;
    double t_cross = 0.0;

    double energy_at(double theta) const;
};
RotationTraces rotation_traces(const DensityMatrix& observable, const DensityMatrix& rho,
                               int qubit, PauliAxis generator);

// Computational-basis probabilities (|amp|^2 resp. the diagonal).
std::vector<double> basis_probabilities(const StateVector& psi);
std::vector<double> basis_probabilities(const DensityMatrix& rho);
std::vector<double> basis_probabilities(const QuantumState& s);

// Smallest eigenvalue; used by positivity checks.
double min_eigenvalue(const DensityMatrix& rho);

}  // namespace qrao
