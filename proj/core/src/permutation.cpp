#include "symcone/permutation.hpp"

#include "symcone/errors.hpp"

#include <cctype>
#include <charconv>

namespace symcone {

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (int x : images_) {
    if (x < 0 || static_cast<std::size_t>(x) >= images_.size() || seen[static_cast<std::size_t>(x)]) {
      throw GroupError("not a permutation");
    }
    seen[static_cast<std::size_t>(x)] = true;
  }
}

Permutation Permutation::identity(int degree) {
  Permutation p;
  p.images_.resize(static_cast<std::size_t>(degree));
  for (int i = 0; i < degree; ++i) p.images_[static_cast<std::size_t>(i)] = i;
  return p;
}

Permutation Permutation::from_cycles(int degree, std::string_view text) {
  std::vector<int> images(static_cast<std::size_t>(degree));
  for (int i = 0; i < degree; ++i) images[static_cast<std::size_t>(i)] = i;
  std::vector<bool> used(static_cast<std::size_t>(degree), false);
  std::size_t pos = 0;
  auto skip_space = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip_space();
  while (pos < text.size()) {
    if (text[pos] != '(') throw GroupError("cycle notation: expected '(' in '" + std::string(text) + "'");
    ++pos;
    std::vector<int> cycle;
    while (true) {
      skip_space();
      if (pos >= text.size()) throw GroupError("cycle notation: unterminated cycle");
      if (text[pos] == ')') {
        ++pos;
        break;
      }
      if (text[pos] == ',') {
        ++pos;
        continue;
      }
      int value = 0;
      auto [end, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), value);
      if (ec != std::errc()) throw GroupError("cycle notation: bad point in '" + std::string(text) + "'");
      pos = static_cast<std::size_t>(end - text.data());
      if (value < 1 || value > degree) throw GroupError("cycle notation: point out of range");
      if (used[static_cast<std::size_t>(value - 1)]) throw GroupError("cycle notation: cycles are not disjoint");
      used[static_cast<std::size_t>(value - 1)] = true;
      cycle.push_back(value - 1);
    }
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      images[static_cast<std::size_t>(cycle[k])] = cycle[(k + 1) % cycle.size()];
    }
    skip_space();
  }
  return Permutation(std::move(images));
}

Permutation Permutation::then(const Permutation& next) const {
  if (next.degree() != degree()) throw GroupError("composing permutations of different degree");
  Permutation p;
  p.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) p.images_[i] = next.images_[static_cast<std::size_t>(images_[i])];
  return p;
}

Permutation Permutation::inverse() const {
  Permutation p;
  p.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) p.images_[static_cast<std::size_t>(images_[i])] = static_cast<int>(i);
  return p;
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != static_cast<int>(i)) return false;
  }
  return true;
}

FaceSet Permutation::apply(const FaceSet& s) const {
  std::vector<int> out;
  out.reserve(s.size());
  for (int x : s) out.push_back(images_[static_cast<std::size_t>(x)]);
  return FaceSet(std::move(out));
}

std::string Permutation::to_cycle_string() const {
  std::string out;
  std::vector<bool> done(images_.size(), false);
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (done[i] || images_[i] == static_cast<int>(i)) continue;
    out += '(';
    std::size_t j = i;
    bool first = true;
    while (!done[j]) {
      done[j] = true;
      if (!first) out += ' ';
      out += std::to_string(j + 1);
      first = false;
      j = static_cast<std::size_t>(images_[j]);
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

}  // namespace symcone
