#include "jex/faces.hpp"

#include <algorithm>
#include <bit>

#include "jex/errors.hpp"

namespace jex {

namespace {

constexpr int kMaxDimension = 16;

}  // namespace

FaceSet::FaceSet(std::vector<int> members) : members_(std::move(members)) {
  if (members_.empty()) throw DomainError("face must not be empty");
  std::sort(members_.begin(), members_.end());
  for (std::size_t k = 0; k < members_.size(); ++k) {
    const int i = members_[k];
    if (i < 1 || i > kMaxDimension) {
      throw DomainError("face index out of range: " + std::to_string(i));
    }
    if (k > 0 && members_[k] == members_[k - 1]) {
      throw DomainError("face indices must be distinct");
    }
    mask_ |= 1u << (i - 1);
  }
}

FaceSet::FaceSet(std::initializer_list<int> members)
    : FaceSet(std::vector<int>(members)) {}

bool FaceSet::contains(int index) const {
  return index >= 1 && index <= kMaxDimension &&
         (mask_ & (1u << (index - 1))) != 0;
}

FaceSet FaceSet::from_mask(std::uint32_t mask) {
  std::vector<int> members;
  for (int i = 0; i < kMaxDimension; ++i) {
    if (mask & (1u << i)) members.push_back(i + 1);
  }
  return FaceSet(std::move(members));
}

std::string FaceSet::key() const {
  std::string out;
  for (std::size_t k = 0; k < members_.size(); ++k) {
    if (k > 0) out += ',';
    out += std::to_string(members_[k]);
  }
  return out;
}

FaceSet FaceSet::parse_key(const std::string& key) {
  std::vector<int> members;
  std::size_t pos = 0;
  while (pos < key.size()) {
    std::size_t next = key.find(',', pos);
    if (next == std::string::npos) next = key.size();
    const std::string token = key.substr(pos, next - pos);
    try {
      std::size_t used = 0;
      const int value = std::stoi(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
      members.push_back(value);
    } catch (const std::exception&) {
      throw DomainError("malformed face key: \"" + key + "\"");
    }
    pos = next + 1;
  }
  return FaceSet(std::move(members));
}

bool operator<(const FaceSet& a, const FaceSet& b) {
  if (a.members_.size() != b.members_.size()) {
    return a.members_.size() < b.members_.size();
  }
  return std::lexicographical_compare(a.members_.begin(), a.members_.end(),
                                      b.members_.begin(), b.members_.end());
}

std::vector<FaceSet> enumerate_faces(int n) {
  if (n < 2) throw DomainError("dimension must be >= 2");
  if (n > kMaxDimension) {
    throw DomainError("dimension exceeds face enumeration capacity");
  }
  std::vector<FaceSet> faces;
  const std::uint32_t full = (1u << n) - 1;
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    const int size = std::popcount(mask);
    if (size >= 2 && size <= n - 1) faces.push_back(FaceSet::from_mask(mask));
  }
  std::sort(faces.begin(), faces.end());
  return faces;
}

}  // namespace jex
