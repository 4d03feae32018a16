#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace jex {

/// A set of coordinate indices I within {1,...,n} with 2 <= |I| <= n-1,
/// identifying one face of the non-negative orthant boundary. Members are
/// 1-based and kept sorted. Faces order by size, then lexicographically.
class FaceSet {
 public:
  explicit FaceSet(std::vector<int> members);
  FaceSet(std::initializer_list<int> members);

  const std::vector<int>& members() const { return members_; }
  int size() const { return static_cast<int>(members_.size()); }
  bool contains(int index) const;

  /// Bitmask with bit (i-1) set for each member i.
  std::uint32_t mask() const { return mask_; }
  static FaceSet from_mask(std::uint32_t mask);

  /// Comma-joined members, e.g. "1,2". Used as the JSON key.
  std::string key() const;
  static FaceSet parse_key(const std::string& key);

  friend bool operator==(const FaceSet& a, const FaceSet& b) {
    return a.mask_ == b.mask_;
  }
  friend bool operator!=(const FaceSet& a, const FaceSet& b) {
    return !(a == b);
  }
  friend bool operator<(const FaceSet& a, const FaceSet& b);

 private:
  std::vector<int> members_;
  std::uint32_t mask_ = 0;
};

/// All faces I with 2 <= |I| <= n-1 in deterministic order (by size, then
/// lexicographic). Size is 2^n - n - 2; empty for n = 2.
std::vector<FaceSet> enumerate_faces(int n);

}  // namespace jex
