#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace oddcolor {

enum class Errc {
  malformed_rotation,
  not_simple,
  not_planar_embedding,
  not_planar,
  disconnected,
  improper_coloring,
  from_absent,
  same_color,
  cannot_extend,
  unrepresentable,
  untypeable,
  precondition_failed,
  not_flexible,
  stuck,
  not_on_2thread,
  rule_precondition_failed,
  too_large,
  exceeds,
  too_many_targets,
  invalid_spec,
  incomplete,
  parse_error,
};

constexpr auto errc_name(Errc e) -> std::string_view {
  switch (e) {
    case Errc::malformed_rotation: return "MalformedRotation";
    case Errc::not_simple: return "NotSimple";
    case Errc::not_planar_embedding: return "NotPlanarEmbedding";
    case Errc::not_planar: return "NotPlanar";
    case Errc::disconnected: return "Disconnected";
    case Errc::improper_coloring: return "ImproperColoring";
    case Errc::from_absent: return "FromAbsent";
    case Errc::same_color: return "SameColor";
    case Errc::cannot_extend: return "CannotExtend";
    case Errc::unrepresentable: return "Unrepresentable";
    case Errc::untypeable: return "Untypeable";
    case Errc::precondition_failed: return "PreconditionFailed";
    case Errc::not_flexible: return "NotFlexible";
    case Errc::stuck: return "Stuck";
    case Errc::not_on_2thread: return "NotOn2Thread";
    case Errc::rule_precondition_failed: return "RulePreconditionFailed";
    case Errc::too_large: return "TooLarge";
    case Errc::exceeds: return "Exceeds";
    case Errc::too_many_targets: return "TooManyTargets";
    case Errc::invalid_spec: return "InvalidSpec";
    case Errc::incomplete: return "Incomplete";
    case Errc::parse_error: return "ParseError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail)
      : std::runtime_error(std::string(errc_name(code)) + ": " + detail), code_(code) {}

  auto code() const noexcept -> Errc { return code_; }

 private:
  Errc code_;
};

}  // namespace oddcolor
