#pragma once

#include <atomic>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace leq {

// A decoration appended to a variable name.  Names carry a *word* over this
// alphabet so that iterated decorations (x, x', x^*, x'^*, ...) stay distinct.
enum class Deco : std::uint8_t { Prime, Star };

// Structured variable name: a base identifier, an optional freshness counter
// (0 means "as written by the user"), and a decoration word applied to the
// whole name.  Decorating is injective: primed(v) == primed(w) iff v == w.
class VarName {
public:
  VarName() = default;
  explicit VarName(std::string base, std::vector<Deco> decos = {},
                   std::uint32_t fresh = 0)
      : base_(std::move(base)), decos_(std::move(decos)), fresh_(fresh) {}

  const std::string& base() const { return base_; }
  const std::vector<Deco>& decos() const { return decos_; }
  std::uint32_t fresh_id() const { return fresh_; }

  VarName primed() const {
    auto d = decos_;
    d.push_back(Deco::Prime);
    return VarName(base_, std::move(d), fresh_);
  }
  VarName starred() const {
    auto d = decos_;
    d.push_back(Deco::Star);
    return VarName(base_, std::move(d), fresh_);
  }
  // Same base and decorations, new globally unused freshness counter.
  VarName freshened() const;

  // Printable / parseable spelling: base, then `_N` when freshened, then the
  // decoration word (' for Prime, ^* for Star).
  std::string display() const;

  bool operator==(const VarName& o) const {
    return fresh_ == o.fresh_ && base_ == o.base_ && decos_ == o.decos_;
  }
  bool operator!=(const VarName& o) const { return !(*this == o); }
  bool operator<(const VarName& o) const {
    if (base_ != o.base_) return base_ < o.base_;
    if (fresh_ != o.fresh_) return fresh_ < o.fresh_;
    return decos_ < o.decos_;
  }

private:
  std::string base_;
  std::vector<Deco> decos_;
  std::uint32_t fresh_ = 0;
};

// Draw a fresh counter value.  The counter is process-global and atomic; it is
// reset at the start of every CLI run / test case so output is reproducible.
std::uint32_t next_fresh_id();
void reset_fresh_ids();

}  // namespace leq
