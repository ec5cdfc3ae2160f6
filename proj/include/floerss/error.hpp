#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace floerss {

enum class Errc {
  InvalidArgument,
  SizeLimit,
  NotASubspace,
  InconsistentExtension,
  NotDegreeOneGenerated,
  NotApplicable,
  ZeroDerivation,
  NotShiftMinusOne,
  ShapeMismatch,
  NotADifferential,
  ProductsAbsent,
  LiftFailure,
  LeibnizFailure,
  HypothesisFailure,
  NotLagrangian,
  DegenerateFrame,
  InsufficientSampling,
  BasepointMismatch,
  ParseError,
};

constexpr std::string_view errc_name(Errc c) noexcept {
  switch (c) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::SizeLimit: return "SizeLimit";
    case Errc::NotASubspace: return "NotASubspace";
    case Errc::InconsistentExtension: return "InconsistentExtension";
    case Errc::NotDegreeOneGenerated: return "NotDegreeOneGenerated";
    case Errc::NotApplicable: return "NotApplicable";
    case Errc::ZeroDerivation: return "ZeroDerivation";
    case Errc::NotShiftMinusOne: return "NotShiftMinusOne";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::NotADifferential: return "NotADifferential";
    case Errc::ProductsAbsent: return "ProductsAbsent";
    case Errc::LiftFailure: return "LiftFailure";
    case Errc::LeibnizFailure: return "LeibnizFailure";
    case Errc::HypothesisFailure: return "HypothesisFailure";
    case Errc::NotLagrangian: return "NotLagrangian";
    case Errc::DegenerateFrame: return "DegenerateFrame";
    case Errc::InsufficientSampling: return "InsufficientSampling";
    case Errc::BasepointMismatch: return "BasepointMismatch";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above; the
/// message always starts with the code name so CLI diagnostics can be grepped.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace floerss
