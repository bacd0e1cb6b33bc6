#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qpath {

enum class Pauli : std::uint8_t { I, X, Y, Z };

char pauli_char(Pauli p);

/// Tensor product of single-qubit Pauli operators. Qubit 0 is the
/// least-significant bit of a basis-state index throughout the library.
///
/// A PauliString squares to the identity, which is what makes the closed-form
/// rotation exp(-i*theta*P) = cos(theta)*I - i*sin(theta)*P valid.
class PauliString {
public:
    explicit PauliString(std::vector<Pauli> ops);

    /// Parse from a string like "XZI"; character k acts on qubit k.
    static PauliString parse(std::string_view text);

    int qubit_count() const { return static_cast<int>(ops_.size()); }
    Pauli op(int qubit) const { return ops_[static_cast<std::size_t>(qubit)]; }
    const std::vector<Pauli>& ops() const { return ops_; }

    /// True when every factor is I. Such a generator only contributes a global
    /// phase; it is allowed but callers may want to flag it.
    bool is_identity() const;

    /// Bitmask of qubits whose basis bit is flipped by this operator (X and Y).
    std::uint64_t flip_mask() const { return flip_mask_; }

    /// Phase factor picked up when the operator acts on basis state |z>:
    /// P|z> = basis_phase(z) * |z ^ flip_mask()>.
    std::complex<double> basis_phase(std::uint64_t z) const;

    std::string to_string() const;

private:
    std::vector<Pauli> ops_;
    std::uint64_t flip_mask_ = 0;
    std::uint64_t z_mask_ = 0; // qubits contributing (-1)^bit (Y and Z)
    int y_count_ = 0;
};

} // namespace qpath
