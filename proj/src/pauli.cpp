#include "qpath/pauli.hpp"

#include <bit>

#include "qpath/errors.hpp"

namespace qpath {

char pauli_char(Pauli p) {
    switch (p) {
    case Pauli::I: return 'I';
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    case Pauli::Z: return 'Z';
    }
    return '?';
}

PauliString::PauliString(std::vector<Pauli> ops) : ops_(std::move(ops)) {
    if (ops_.empty()) {
        throw StructuralError("PauliString: empty operator list");
    }
    if (ops_.size() > 63) {
        throw StructuralError("PauliString: more than 63 qubits unsupported");
    }
    for (std::size_t q = 0; q < ops_.size(); ++q) {
        switch (ops_[q]) {
        case Pauli::I:
            break;
        case Pauli::X:
            flip_mask_ |= std::uint64_t{1} << q;
            break;
        case Pauli::Y:
            flip_mask_ |= std::uint64_t{1} << q;
            z_mask_ |= std::uint64_t{1} << q;
            ++y_count_;
            break;
        case Pauli::Z:
            z_mask_ |= std::uint64_t{1} << q;
            break;
        }
    }
}

PauliString PauliString::parse(std::string_view text) {
    std::vector<Pauli> ops;
    ops.reserve(text.size());
    for (char c : text) {
        switch (c) {
        case 'I': case 'i': ops.push_back(Pauli::I); break;
        case 'X': case 'x': ops.push_back(Pauli::X); break;
        case 'Y': case 'y': ops.push_back(Pauli::Y); break;
        case 'Z': case 'z': ops.push_back(Pauli::Z); break;
        default:
            throw StructuralError(std::string("PauliString: invalid character '") + c + "'");
        }
    }
    return PauliString(std::move(ops));
}

bool PauliString::is_identity() const {
    return flip_mask_ == 0 && z_mask_ == 0;
}

std::complex<double> PauliString::basis_phase(std::uint64_t z) const {
    // Z on bit b: (-1)^b.  Y on bit b: i * (-1)^b (and flips the bit).
    const int minus_count = std::popcount(z & z_mask_);
    double re = (minus_count & 1) ? -1.0 : 1.0;
    // multiply by i^y_count
    switch (y_count_ & 3) {
    case 0: return {re, 0.0};
    case 1: return {0.0, re};
    case 2: return {-re, 0.0};
    default: return {0.0, -re};
    }
}

std::string PauliString::to_string() const {
    std::string s;
    s.reserve(ops_.size());
    for (Pauli p : ops_) s.push_back(pauli_char(p));
    return s;
}

} // namespace qpath
