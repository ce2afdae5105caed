// Copyright 2026 The pptdisc developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace pptdisc {

/// A named tensor factor of a composite Hilbert space.
struct Register {
  std::string label;
  std::size_t dim = 1;

  friend bool operator==(const Register& a, const Register& b) {
    return a.label == b.label && a.dim == b.dim;
  }
};

/// Ordered list of registers. The order fixes the basis of the composite
/// space: flat index = sum_r digit[r] * stride[r], with the first register
/// most significant (row-major).
class RegisterSystem {
 public:
  RegisterSystem() = default;

  explicit RegisterSystem(std::vector<Register> regs) : regs_(std::move(regs)) {
    std::set<std::string> seen;
    total_ = 1;
    for (const auto& r : regs_) {
      if (r.dim < 1) throw std::invalid_argument("register '" + r.label + "' has dim < 1");
      if (!seen.insert(r.label).second)
        throw std::invalid_argument("duplicate register label '" + r.label + "'");
      total_ *= r.dim;
    }
  }

  RegisterSystem(std::initializer_list<Register> regs)
      : RegisterSystem(std::vector<Register>(regs)) {}

  std::size_t size() const { return regs_.size(); }
  std::size_t total_dim() const { return total_; }
  const std::vector<Register>& registers() const { return regs_; }
  const Register& at(std::size_t i) const { return regs_.at(i); }

  bool has(const std::string& label) const {
    return std::any_of(regs_.begin(), regs_.end(),
                       [&](const Register& r) { return r.label == label; });
  }

  std::size_t index_of(const std::string& label) const {
    for (std::size_t i = 0; i < regs_.size(); ++i)
      if (regs_[i].label == label) return i;
    throw std::invalid_argument("unknown register label '" + label + "'");
  }

  std::size_t dim_of(const std::string& label) const { return regs_[index_of(label)].dim; }

  std::vector<std::string> labels() const {
    std::vector<std::string> out;
    out.reserve(regs_.size());
    for (const auto& r : regs_) out.push_back(r.label);
    return out;
  }

  /// Flat index -> per-register digits.
  void decode(std::size_t flat, std::vector<std::size_t>& digits) const {
    digits.resize(regs_.size());
    for (std::size_t i = regs_.size(); i-- > 0;) {
      digits[i] = flat % regs_[i].dim;
      flat /= regs_[i].dim;
    }
  }

  std::size_t encode(const std::vector<std::size_t>& digits) const {
    std::size_t flat = 0;
    for (std::size_t i = 0; i < regs_.size(); ++i) flat = flat * regs_[i].dim + digits[i];
    return flat;
  }

  /// Concatenation; labels must stay unique.
  friend RegisterSystem operator+(const RegisterSystem& a, const RegisterSystem& b) {
    std::vector<Register> regs = a.regs_;
    regs.insert(regs.end(), b.regs_.begin(), b.regs_.end());
    return RegisterSystem(std::move(regs));
  }

  /// Registers not in `drop`, in original order.
  RegisterSystem without(const std::set<std::string>& drop) const {
    std::vector<Register> regs;
    for (const auto& r : regs_)
      if (!drop.count(r.label)) regs.push_back(r);
    return RegisterSystem(std::move(regs));
  }

  RegisterSystem reordered(const std::vector<std::string>& order) const {
    if (order.size() != regs_.size())
      throw std::invalid_argument("register order is not a permutation: wrong length");
    std::vector<Register> regs;
    std::set<std::string> seen;
    for (const auto& l : order) {
      if (!seen.insert(l).second)
        throw std::invalid_argument("register order repeats label '" + l + "'");
      regs.push_back(regs_[index_of(l)]);
    }
    return RegisterSystem(std::move(regs));
  }

  friend bool operator==(const RegisterSystem& a, const RegisterSystem& b) {
    return a.regs_ == b.regs_;
  }

 private:
  std::vector<Register> regs_;
  std::size_t total_ = 1;
};

}  // namespace pptdisc
