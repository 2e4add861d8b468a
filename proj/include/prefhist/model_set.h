// Finite universes of models and bitmask model sets.
//
// A model is an index 0..size-1. When the universe is generated by atoms
// p0..p(k-1), bit i of a model index is the truth value of p_i, so model 1 over
// two atoms is {p0 = true, p1 = false}.

#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace prefhist {

// Every input error raised by the library (bad formula, bad file, contract
// violation on arguments) derives from this.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ModelSet {
 public:
  constexpr ModelSet() = default;
  constexpr explicit ModelSet(std::uint64_t bits) : bits_(bits) {}

  static constexpr ModelSet singleton(int model) {
    return ModelSet(std::uint64_t{1} << model);
  }
  static ModelSet of(std::initializer_list<int> models);

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool contains(int model) const { return (bits_ >> model) & 1U; }
  constexpr bool subset_of(ModelSet other) const {
    return (bits_ & ~other.bits_) == 0;
  }
  constexpr bool intersects(ModelSet other) const {
    return (bits_ & other.bits_) != 0;
  }
  // Smallest member; undefined on the empty set.
  constexpr int first() const { return std::countr_zero(bits_); }
  std::vector<int> members() const;

  constexpr ModelSet operator|(ModelSet o) const { return ModelSet(bits_ | o.bits_); }
  constexpr ModelSet operator&(ModelSet o) const { return ModelSet(bits_ & o.bits_); }
  // Set difference.
  constexpr ModelSet operator-(ModelSet o) const { return ModelSet(bits_ & ~o.bits_); }
  ModelSet& operator|=(ModelSet o) { bits_ |= o.bits_; return *this; }
  ModelSet& operator&=(ModelSet o) { bits_ &= o.bits_; return *this; }

  constexpr bool operator==(const ModelSet&) const = default;
  constexpr auto operator<=>(const ModelSet&) const = default;

 private:
  std::uint64_t bits_ = 0;
};

class Universe {
 public:
  static constexpr int kMaxAtoms = 6;
  static constexpr int kMaxModels = 64;

  // Universe of the 2^k valuations of atoms p0..p(k-1).
  static Universe atoms(int k);
  // Universe of m unnamed models.
  static Universe abstract(int m);

  int size() const { return size_; }
  bool has_atoms() const { return atom_count_ >= 0; }
  // -1 for abstract universes.
  int atom_count() const { return atom_count_; }
  ModelSet all() const {
    return ModelSet(size_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << size_) - 1);
  }
  bool contains(ModelSet s) const { return s.subset_of(all()); }

  // "atoms=k" or "universe=m", the header syntax shared by every file format.
  std::string header() const;

  bool operator==(const Universe&) const = default;

 private:
  Universe(int size, int atom_count) : size_(size), atom_count_(atom_count) {}
  int size_;
  int atom_count_;
};

// "{0,2,3}"; the empty set prints as "{}".
std::string to_string(ModelSet s);
// Inverse of to_string. Rejects models outside the universe.
ModelSet parse_model_set(std::string_view text, const Universe& u);

// A entails B iff every model of A is a model of B. Throws if either set has
// members outside u.
bool entails(const Universe& u, ModelSet a, ModelSet b);

}  // namespace prefhist
