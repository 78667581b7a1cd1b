#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ghzqpc/rng.hpp"

namespace ghzqpc {

using Complex = std::complex<double>;

inline constexpr int kMaxQubits = 20;  // dense vectors only
inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kUnitaryTolerance = 1e-10;

enum class Basis { z, x };

// The four decoy preparations: Z eigenstates |0>,|1> and X eigenstates
// |+>,|->. X outcomes are encoded |+> -> 0, |-> -> 1.
enum class DecoyKind { zero, one, plus, minus };

Basis decoy_basis(DecoyKind kind);
int decoy_bit(DecoyKind kind);

std::uint64_t bits_to_index(std::string_view bits);
std::string index_to_bits(std::uint64_t index, int qubit_count);
std::string complement_bits(std::string_view bits);
std::string xor_bits(std::string_view a, std::string_view b);

// Dense statevector over m qubits. Qubit 0 is the most significant bit of
// the basis index: |q0 q1 ... q_{m-1}> sits at index q0*2^{m-1}+...+q_{m-1}.
// Instances are values; every operation returns a new state. Construction
// enforces normalization to kNormTolerance.
class StateVector {
 public:
  static StateVector basis_state(int qubit_count, std::uint64_t index);
  static StateVector from_bits(std::string_view bits);
  static StateVector from_amplitudes(int qubit_count, std::vector<Complex> amplitudes);

  int qubit_count() const { return qubit_count_; }
  std::uint64_t dimension() const { return std::uint64_t{1} << qubit_count_; }
  const std::vector<Complex>& amplitudes() const { return amps_; }
  Complex amplitude(std::uint64_t index) const { return amps_.at(index); }
  double norm_squared() const;

 private:
  StateVector(int qubit_count, std::vector<Complex> amps)
      : qubit_count_(qubit_count), amps_(std::move(amps)) {}

  int qubit_count_;
  std::vector<Complex> amps_;
};

// (|0 b_1..b_n> + |1 ~b_1..~b_n>)/sqrt(2): an (n+1)-qubit carrier whose flag
// qubit is 0 on the branch holding the plaintext bits.
StateVector make_ghz(std::string_view bits);

// (|B(k)> + sign * |B(2^m - k - 1)>)/sqrt(2) over m qubits, 0 <= k < 2^{m-1},
// sign in {+1, -1}. The 2^m such states form an orthonormal basis.
StateVector canonical_ghz(std::uint64_t k, int sign, int qubit_count);

// <a|b>, conjugate-linear in a.
Complex inner_product(const StateVector& a, const StateVector& b);

// Kronecker product; a's qubits come first (most significant).
StateVector tensor(const StateVector& a, const StateVector& b);

StateVector prepare_decoy(DecoyKind kind);

// u is 2x2 row-major.
StateVector apply_single_qubit_unitary(const StateVector& state, int index,
                                       const std::array<Complex, 4>& u);

// 4x4 unitary validated to kUnitaryTolerance on construction, acting on a
// (data, ancilla) pair with basis order |data ancilla>.
class TwoQubitUnitary {
 public:
  static TwoQubitUnitary from_matrix(const std::array<Complex, 16>& row_major);
  static TwoQubitUnitary identity();
  static TwoQubitUnitary cnot();  // data controls ancilla

  Complex at(int row, int col) const { return m_[row * 4 + col]; }
  const std::array<Complex, 16>& elements() const { return m_; }

 private:
  explicit TwoQubitUnitary(const std::array<Complex, 16>& m) : m_(m) {}
  std::array<Complex, 16> m_;
};

StateVector apply_two_qubit_unitary(const StateVector& state, int data_index,
                                    int ancilla_index, const TwoQubitUnitary& u);

// Born probability of `bit` when measuring one qubit; no collapse.
double outcome_probability(const StateVector& state, int index, Basis basis, int bit);

// Collapse onto the given outcome (renormalized); throws if its probability
// is zero. The measured qubit stays in place as the outcome eigenstate.
StateVector project_outcome(const StateVector& state, int index, Basis basis, int bit);

struct MeasurementResult {
  int bit;
  StateVector state;
};

MeasurementResult measure_qubit(const StateVector& state, int index, Basis basis, Rng& rng);

// Samples a full Z-basis measurement; returns the m-bit outcome string.
std::string measure_all_z(const StateVector& state, Rng& rng);

// Frobenius distance between the state, reshaped across the first
// `first_block` qubits vs the rest, and its best rank-one approximation
// built from the dominant row. Zero iff the state factorizes across the cut.
double bipartite_product_residual(const StateVector& state, int first_block);

}  // namespace ghzqpc
