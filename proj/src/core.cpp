#include "sunflower/core.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

namespace sunflower {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DuplicateMember: return "DuplicateMember";
    case ErrorKind::EmptySet: return "EmptySet";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::BadArity: return "BadArity";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::NotPrimePower: return "NotPrimePower";
    case ErrorKind::InapplicableFactor: return "InapplicableFactor";
    case ErrorKind::NotPartite: return "NotPartite";
    case ErrorKind::InputHasSunflower: return "InputHasSunflower";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::UsageError: return "UsageError";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

ElementSet intersect(const ElementSet& a, const ElementSet& b) {
  ElementSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

ElementSet unite(const ElementSet& a, const ElementSet& b) {
  ElementSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// ---------------------------------------------------------------------------
// SetFamily

SetFamily::SetFamily(std::vector<ElementSet> members, std::vector<std::string> labels)
    : members_(std::move(members)), labels_(std::move(labels)) {
  for (auto& m : members_) {
    std::sort(m.begin(), m.end());
    m.erase(std::unique(m.begin(), m.end()), m.end());
  }
  std::set<ElementSet> seen;
  std::set<ElementId> ground;
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (!seen.insert(members_[i]).second) {
      throw Error(ErrorKind::DuplicateMember, "member " + std::to_string(i) + " repeats an earlier member");
    }
    ground.insert(members_[i].begin(), members_[i].end());
  }
  ground_.assign(ground.begin(), ground.end());
  if (!members_.empty()) {
    const auto k = members_.front().size();
    const bool same = std::all_of(members_.begin(), members_.end(),
                                  [k](const ElementSet& m) { return m.size() == k; });
    if (same) uniformity_ = k;
  }
  if (!labels_.empty() && !ground_.empty() && ground_.back() >= labels_.size()) {
    throw Error(ErrorKind::OutOfRange, "label table does not cover every element id");
  }
}

std::string SetFamily::label(ElementId id) const {
  if (id < labels_.size()) return labels_[id];
  return std::to_string(id);
}

bool SetFamily::is_dense() const noexcept {
  return ground_.empty() || ground_.back() + 1 == ground_.size();
}

SetFamily SetFamily::normalized() const {
  std::unordered_map<ElementId, ElementId> remap;
  std::vector<std::string> labels;
  labels.reserve(ground_.size());
  for (std::size_t i = 0; i < ground_.size(); ++i) {
    remap.emplace(ground_[i], static_cast<ElementId>(i));
    labels.push_back(label(ground_[i]));
  }
  std::vector<ElementSet> members;
  members.reserve(members_.size());
  for (const auto& m : members_) {
    ElementSet r;
    r.reserve(m.size());
    for (auto e : m) r.push_back(remap.at(e));
    members.push_back(std::move(r));
  }
  return SetFamily(std::move(members), std::move(labels));
}

SetFamily SetFamily::subfamily(std::span<const std::size_t> indices) const {
  std::vector<ElementSet> members;
  members.reserve(indices.size());
  for (auto i : indices) members.push_back(members_.at(i));
  return SetFamily(std::move(members), labels_);
}

// ---------------------------------------------------------------------------
// ModulusVector / VectorFamily

ModulusVector::ModulusVector(std::vector<std::uint32_t> moduli) : moduli_(std::move(moduli)) {
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    if (moduli_[i] < 2) {
      throw Error(ErrorKind::DomainError, "modulus D_" + std::to_string(i + 1) + " must be >= 2");
    }
  }
}

std::uint64_t ModulusVector::point_count() const noexcept {
  std::uint64_t total = 1;
  for (auto d : moduli_) {
    if (total > std::numeric_limits<std::uint64_t>::max() / d) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    total *= d;
  }
  return total;
}

bool ModulusVector::all_at_least(std::uint32_t bound) const noexcept {
  return std::all_of(moduli_.begin(), moduli_.end(), [bound](auto d) { return d >= bound; });
}

bool ModulusVector::uniform() const noexcept {
  return std::adjacent_find(moduli_.begin(), moduli_.end(), std::not_equal_to<>()) == moduli_.end();
}

bool ModulusVector::contains(const Vector& v) const noexcept {
  if (v.size() != moduli_.size()) return false;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] >= moduli_[i]) return false;
  }
  return true;
}

std::uint64_t ModulusVector::rank(const Vector& v) const {
  if (!contains(v)) throw Error(ErrorKind::OutOfRange, "vector outside the modulus box");
  std::uint64_t r = 0;
  for (std::size_t i = 0; i < v.size(); ++i) r = r * moduli_[i] + v[i];
  return r;
}

Vector ModulusVector::unrank(std::uint64_t index) const {
  Vector v(moduli_.size());
  for (std::size_t i = moduli_.size(); i-- > 0;) {
    v[i] = static_cast<std::uint32_t>(index % moduli_[i]);
    index /= moduli_[i];
  }
  return v;
}

VectorFamily::VectorFamily(ModulusVector moduli, std::vector<Vector> members)
    : moduli_(std::move(moduli)), members_(std::move(members)) {
  std::set<Vector> seen;
  for (std::size_t i = 0; i < members_.size(); ++i) {
    const auto& v = members_[i];
    if (v.size() != moduli_.size()) {
      throw Error(ErrorKind::ArityMismatch, "member " + std::to_string(i) + " has " + std::to_string(v.size()) +
                                                " coordinates, expected " + std::to_string(moduli_.size()));
    }
    for (std::size_t c = 0; c < v.size(); ++c) {
      if (v[c] >= moduli_[c]) {
        throw Error(ErrorKind::OutOfRange, "member " + std::to_string(i) + " coordinate " + std::to_string(c + 1) +
                                               " = " + std::to_string(v[c]) + " >= " + std::to_string(moduli_[c]));
      }
    }
    if (!seen.insert(v).second) {
      throw Error(ErrorKind::DuplicateMember, "member " + std::to_string(i) + " repeats an earlier member");
    }
  }
}

VectorFamily VectorFamily::subfamily(std::span<const std::size_t> indices) const {
  std::vector<Vector> members;
  members.reserve(indices.size());
  for (auto i : indices) members.push_back(members_.at(i));
  return VectorFamily(moduli_, std::move(members));
}

// ---------------------------------------------------------------------------
// PartiteStructure

PartiteStructure::PartiteStructure(std::vector<ElementSet> classes) : classes_(std::move(classes)) {
  for (std::size_t c = 0; c < classes_.size(); ++c) {
    auto& cls = classes_[c];
    std::sort(cls.begin(), cls.end());
    cls.erase(std::unique(cls.begin(), cls.end()), cls.end());
    for (auto e : cls) owner_.emplace_back(e, c);
  }
  std::sort(owner_.begin(), owner_.end());
  for (std::size_t i = 1; i < owner_.size(); ++i) {
    if (owner_[i].first == owner_[i - 1].first) {
      throw Error(ErrorKind::NotPartite, "element " + std::to_string(owner_[i].first) + " lies in two classes");
    }
  }
  ground_.reserve(owner_.size());
  for (const auto& [e, c] : owner_) ground_.push_back(e);
}

std::optional<std::size_t> PartiteStructure::class_of(ElementId e) const {
  auto it = std::lower_bound(owner_.begin(), owner_.end(), std::make_pair(e, std::size_t{0}));
  if (it == owner_.end() || it->first != e) return std::nullopt;
  return it->second;
}

bool PartiteStructure::is_transversal(const ElementSet& s) const {
  if (s.size() != classes_.size()) return false;
  std::vector<bool> hit(classes_.size(), false);
  for (auto e : s) {
    auto c = class_of(e);
    if (!c || hit[*c]) return false;
    hit[*c] = true;
  }
  return true;
}

std::vector<std::size_t> PartiteStructure::class_sizes() const {
  std::vector<std::size_t> sizes;
  sizes.reserve(classes_.size());
  for (const auto& c : classes_) sizes.push_back(c.size());
  return sizes;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

std::vector<std::string_view> split_tokens(std::string_view line, std::string_view separators) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && separators.find(line[i]) != std::string_view::npos) ++i;
    std::size_t j = i;
    while (j < line.size() && separators.find(line[j]) == std::string_view::npos) ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

std::optional<std::uint64_t> to_unsigned(std::string_view token) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) return std::nullopt;
  return value;
}

bool blank(std::string_view line) {
  return line.find_first_not_of(" \t") == std::string_view::npos;
}

constexpr std::string_view kEmptyMarker = "{}";

}  // namespace

SetFamily parse_set_family(std::string_view text, const ParseOptions& options) {
  std::vector<std::vector<std::string>> rows;
  for (auto line : split_lines(text)) {
    if (blank(line)) continue;
    auto tokens = split_tokens(line, " \t");
    if (tokens.size() == 1 && tokens[0] == kEmptyMarker) {
      if (!options.allow_empty_members) {
        throw Error(ErrorKind::EmptySet, "empty member '{}' requires allow_empty_members");
      }
      rows.emplace_back();
      continue;
    }
    std::vector<std::string> row;
    for (auto t : tokens) row.emplace_back(t);
    rows.push_back(std::move(row));
  }

  // Integer tokens get ids in ascending numeric order, anything else by first appearance.
  std::vector<std::string> labels;
  std::map<std::string, ElementId> ids;
  bool numeric = true;
  for (const auto& row : rows) {
    for (const auto& t : row) numeric = numeric && to_unsigned(t).has_value();
  }
  if (numeric) {
    // "01" and "1" name the same element.
    std::map<std::uint64_t, ElementId> rank;
    for (const auto& row : rows) {
      for (const auto& t : row) rank.emplace(*to_unsigned(t), 0);
    }
    for (auto& [value, id] : rank) {
      id = static_cast<ElementId>(labels.size());
      labels.push_back(std::to_string(value));
    }
    for (const auto& row : rows) {
      for (const auto& t : row) ids.emplace(t, rank.at(*to_unsigned(t)));
    }
  } else {
    for (const auto& row : rows) {
      for (const auto& t : row) {
        if (ids.emplace(t, static_cast<ElementId>(labels.size())).second) labels.push_back(t);
      }
    }
  }

  std::vector<ElementSet> members;
  members.reserve(rows.size());
  for (const auto& row : rows) {
    ElementSet s;
    for (const auto& t : row) s.push_back(ids.at(t));
    members.push_back(std::move(s));
  }
  return SetFamily(std::move(members), std::move(labels));
}

ModulusVector parse_moduli(std::string_view text) {
  std::vector<std::uint32_t> moduli;
  for (auto t : split_tokens(text, ", \t")) {
    auto v = to_unsigned(t);
    if (!v || *v > std::numeric_limits<std::uint32_t>::max()) {
      throw Error(ErrorKind::ParseError, "bad modulus '" + std::string(t) + "'");
    }
    moduli.push_back(static_cast<std::uint32_t>(*v));
  }
  return ModulusVector(std::move(moduli));
}

VectorFamily parse_vector_family(std::string_view text, const ModulusVector& moduli) {
  std::vector<Vector> members;
  for (auto line : split_lines(text)) {
    if (blank(line)) continue;
    Vector v;
    for (auto t : split_tokens(line, ", \t")) {
      auto value = to_unsigned(t);
      if (!value) throw Error(ErrorKind::ParseError, "bad coordinate '" + std::string(t) + "'");
      if (*value > std::numeric_limits<std::uint32_t>::max()) {
        throw Error(ErrorKind::OutOfRange, "coordinate '" + std::string(t) + "' too large");
      }
      v.push_back(static_cast<std::uint32_t>(*value));
    }
    members.push_back(std::move(v));
  }
  return VectorFamily(moduli, std::move(members));
}

std::string serialize_set_family(const SetFamily& f) {
  std::ostringstream out;
  for (const auto& m : f.members()) {
    if (m.empty()) {
      out << kEmptyMarker << '\n';
      continue;
    }
    for (std::size_t i = 0; i < m.size(); ++i) out << (i ? " " : "") << f.label(m[i]);
    out << '\n';
  }
  return out.str();
}

std::string serialize_vector_family(const VectorFamily& f) {
  std::ostringstream out;
  for (const auto& v : f.members()) {
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
    out << '\n';
  }
  return out.str();
}

std::size_t union_size(const SetFamily& f) noexcept { return f.ground_size(); }

}  // namespace sunflower
