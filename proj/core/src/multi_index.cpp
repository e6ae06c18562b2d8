#include "pasym/multi_index.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

#include "pasym/errors.hpp"

namespace pasym {

MultiIndex::MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw DomainError("MultiIndex: dimension must be >= 1");
  for (int a : entries_) {
    if (a < 0) throw DomainError("MultiIndex: entries must be nonnegative");
  }
}

MultiIndex MultiIndex::zero(int dimension) {
  if (dimension < 1) throw DomainError("MultiIndex: dimension must be >= 1");
  return MultiIndex(std::vector<int>(static_cast<std::size_t>(dimension), 0));
}

MultiIndex MultiIndex::unit(int dimension, int axis) {
  MultiIndex e = zero(dimension);
  if (axis < 0 || axis >= dimension) throw DomainError("MultiIndex::unit: axis out of range");
  e.entries_[static_cast<std::size_t>(axis)] = 1;
  return e;
}

int MultiIndex::order() const { return std::accumulate(entries_.begin(), entries_.end(), 0); }

double MultiIndex::factorial() const {
  double f = 1.0;
  for (int a : entries_) {
    for (int k = 2; k <= a; ++k) f *= k;
  }
  return f;
}

double MultiIndex::monomial(std::span<const double> x) const {
  double v = 1.0;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    for (int k = 0; k < entries_[i]; ++k) v *= x[i];
  }
  return v;
}

bool MultiIndex::le(const MultiIndex& other) const {
  if (other.dimension() != dimension()) return false;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i] > other.entries_[i]) return false;
  }
  return true;
}

MultiIndex MultiIndex::minus(const MultiIndex& other) const {
  if (!other.le(*this)) throw DomainError("MultiIndex::minus: subtrahend is not componentwise smaller");
  std::vector<int> d(entries_.size());
  for (std::size_t i = 0; i < entries_.size(); ++i) d[i] = entries_[i] - other.entries_[i];
  return MultiIndex(std::move(d));
}

std::vector<MultiIndex> MultiIndex::strictly_below() const {
  std::vector<MultiIndex> out;
  for (auto& rho : indices_up_to(dimension(), order())) {
    if (rho != *this && rho.le(*this)) out.push_back(rho);
  }
  return out;
}

std::string MultiIndex::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) s += '-';
    s += std::to_string(entries_[i]);
  }
  return s;
}

MultiIndex MultiIndex::parse(std::string_view text) {
  std::vector<int> e;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t next = text.find('-', pos);
    if (next == std::string_view::npos) next = text.size();
    auto part = text.substr(pos, next - pos);
    int v = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc{} || ptr != part.data() + part.size() || part.empty()) {
      throw DomainError("MultiIndex::parse: malformed multi-index '" + std::string(text) + "'");
    }
    e.push_back(v);
    pos = next + 1;
  }
  return MultiIndex(std::move(e));
}

namespace {

void enumerate_order(int dimension, int axis, int remaining, std::vector<int>& cur,
                     std::vector<MultiIndex>& out) {
  if (axis == dimension - 1) {
    cur[static_cast<std::size_t>(axis)] = remaining;
    out.emplace_back(cur);
    return;
  }
  for (int a = remaining; a >= 0; --a) {
    cur[static_cast<std::size_t>(axis)] = a;
    enumerate_order(dimension, axis + 1, remaining - a, cur, out);
  }
}

}  // namespace

std::vector<MultiIndex> indices_up_to(int dimension, int max_order) {
  if (dimension < 1) throw DomainError("indices_up_to: dimension must be >= 1");
  std::vector<MultiIndex> out;
  std::vector<int> cur(static_cast<std::size_t>(dimension), 0);
  for (int k = 0; k <= max_order; ++k) enumerate_order(dimension, 0, k, cur, out);
  return out;
}

}  // namespace pasym
