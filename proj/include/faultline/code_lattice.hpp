// Copyright 2026 The Faultline Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "faultline/errors.hpp"

namespace faultline {

enum class Orientation : uint8_t { Vertical, Horizontal };

/// A data qubit lives on a lattice edge.
///
/// Vertices sit at (col, row) with col in [0, L) and row in [0, L-1).
/// A vertical qubit (col, row), row in [0, L), joins vertex (col, row-1) to vertex (col, row);
/// rows 0 and L-1 dangle off the top and bottom (rough) boundaries.
/// A horizontal qubit (col, row), col in [0, L-1), joins vertex (col, row) to (col+1, row).
struct DataQubit {
    Orientation orientation;
    int col;
    int row;
    bool operator==(const DataQubit &) const = default;
};

enum class PauliKind : uint8_t { X, Z };

/// Planar surface code for odd L. X ancillas sit on vertices, Z ancillas on plaquette centres.
/// Left and right boundaries are smooth, top and bottom are rough.
class CodeLattice {
   public:
    explicit CodeLattice(int L) : L_(L) {
        require(L >= 3 && L % 2 == 1, "odd-L required: L must be odd and >= 3, got " + std::to_string(L));
        build();
    }

    int L() const { return L_; }
    /// Number of arbitrary single-qubit errors the code corrects.
    int t() const { return (L_ - 1) / 2; }

    size_t num_data_qubits() const { return qubits_.size(); }
    size_t num_x_ancillas() const { return x_stabilizers_.size(); }
    size_t num_z_ancillas() const { return z_stabilizers_.size(); }
    size_t num_ancillas() const { return num_x_ancillas() + num_z_ancillas(); }

    const std::vector<DataQubit> &data_qubits() const { return qubits_; }
    const DataQubit &qubit(uint32_t q) const { return qubits_[q]; }

    uint32_t vertical_index(int col, int row) const { return static_cast<uint32_t>(row * L_ + col); }
    uint32_t horizontal_index(int col, int row) const {
        return static_cast<uint32_t>(L_ * L_ + row * (L_ - 1) + col);
    }

    /// X ancilla id = row * L + col for vertex (col, row).
    uint32_t x_ancilla(int col, int row) const { return static_cast<uint32_t>(row * L_ + col); }
    /// Z ancilla id = row * (L-1) + col for the plaquette left-bounded by vertical qubit (col, row).
    uint32_t z_ancilla(int col, int row) const { return static_cast<uint32_t>(row * (L_ - 1) + col); }

    const std::vector<std::vector<uint32_t>> &x_stabilizers() const { return x_stabilizers_; }
    const std::vector<std::vector<uint32_t>> &z_stabilizers() const { return z_stabilizers_; }

    const std::vector<uint32_t> &smooth_boundary(int side) const { return smooth_[side]; }
    const std::vector<uint32_t> &rough_boundary(int side) const { return rough_[side]; }

    /// Canonical minimal logical support.
    /// X_L runs between the smooth boundaries along the top row of vertical qubits;
    /// Z_L runs between the rough boundaries down the leftmost column of vertical qubits.
    std::vector<uint32_t> logical_support(PauliKind kind) const {
        std::vector<uint32_t> out;
        for (int i = 0; i < L_; ++i) {
            out.push_back(kind == PauliKind::X ? vertical_index(i, 0) : vertical_index(0, i));
        }
        std::sort(out.begin(), out.end());
        return out;
    }

   private:
    void build() {
        const int L = L_;
        for (int row = 0; row < L; ++row) {
            for (int col = 0; col < L; ++col) {
                qubits_.push_back({Orientation::Vertical, col, row});
            }
        }
        for (int row = 0; row < L - 1; ++row) {
            for (int col = 0; col < L - 1; ++col) {
                qubits_.push_back({Orientation::Horizontal, col, row});
            }
        }

        x_stabilizers_.resize(static_cast<size_t>(L * (L - 1)));
        for (int row = 0; row < L - 1; ++row) {
            for (int col = 0; col < L; ++col) {
                auto &s = x_stabilizers_[x_ancilla(col, row)];
                s.push_back(vertical_index(col, row));
                s.push_back(vertical_index(col, row + 1));
                if (col > 0) s.push_back(horizontal_index(col - 1, row));
                if (col < L - 1) s.push_back(horizontal_index(col, row));
                std::sort(s.begin(), s.end());
            }
        }

        z_stabilizers_.resize(static_cast<size_t>(L * (L - 1)));
        for (int row = 0; row < L; ++row) {
            for (int col = 0; col < L - 1; ++col) {
                auto &s = z_stabilizers_[z_ancilla(col, row)];
                s.push_back(vertical_index(col, row));
                s.push_back(vertical_index(col + 1, row));
                if (row > 0) s.push_back(horizontal_index(col, row - 1));
                if (row < L - 1) s.push_back(horizontal_index(col, row));
                std::sort(s.begin(), s.end());
            }
        }

        for (int i = 0; i < L; ++i) {
            smooth_[0].push_back(vertical_index(0, i));
            smooth_[1].push_back(vertical_index(L - 1, i));
            rough_[0].push_back(vertical_index(i, 0));
            rough_[1].push_back(vertical_index(i, L - 1));
        }
    }

    int L_;
    std::vector<DataQubit> qubits_;
    std::vector<std::vector<uint32_t>> x_stabilizers_;
    std::vector<std::vector<uint32_t>> z_stabilizers_;
    std::vector<uint32_t> smooth_[2];
    std::vector<uint32_t> rough_[2];
};

inline CodeLattice build_code(int L) { return CodeLattice(L); }

inline std::vector<uint32_t> logical_support(const CodeLattice &code, PauliKind kind) {
    return code.logical_support(kind);
}

}  // namespace faultline
