#pragma once

#include <stdexcept>
#include <string>

namespace cosym {

enum class ErrorCode {
  ShapeMismatch,
  FrameTooSmall,
  StepTooLarge,
  EtaVanishes,
  NotClosed,
  SingularFlat,
  NotBasic,
  NoSolution,
  OddBaseDim,
  NotSymplectomorphism,
  NotInLevelSet,
  ParamNotImmersion,
  OutOfRange,
  NoAction,
  NoMomentMap,
  NoFoliation,
  NotClassified,
  NoCriticalPoints,
  EmptyImage,
  NotRegularValue,
  SliceNotTransverse,
  FlowLeftChart,
  NotSubmersionGroupoidShape,
  OriginNotFixed,
  ParseError,
  UnknownScenario,
  UnknownCheck,
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::FrameTooSmall: return "FrameTooSmall";
    case ErrorCode::StepTooLarge: return "StepTooLarge";
    case ErrorCode::EtaVanishes: return "EtaVanishes";
    case ErrorCode::NotClosed: return "NotClosed";
    case ErrorCode::SingularFlat: return "SingularFlat";
    case ErrorCode::NotBasic: return "NotBasic";
    case ErrorCode::NoSolution: return "NoSolution";
    case ErrorCode::OddBaseDim: return "OddBaseDim";
    case ErrorCode::NotSymplectomorphism: return "NotSymplectomorphism";
    case ErrorCode::NotInLevelSet: return "NotInLevelSet";
    case ErrorCode::ParamNotImmersion: return "ParamNotImmersion";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::NoAction: return "NoAction";
    case ErrorCode::NoMomentMap: return "NoMomentMap";
    case ErrorCode::NoFoliation: return "NoFoliation";
    case ErrorCode::NotClassified: return "NotClassified";
    case ErrorCode::NoCriticalPoints: return "NoCriticalPoints";
    case ErrorCode::EmptyImage: return "EmptyImage";
    case ErrorCode::NotRegularValue: return "NotRegularValue";
    case ErrorCode::SliceNotTransverse: return "SliceNotTransverse";
    case ErrorCode::FlowLeftChart: return "FlowLeftChart";
    case ErrorCode::NotSubmersionGroupoidShape: return "NotSubmersionGroupoidShape";
    case ErrorCode::OriginNotFixed: return "OriginNotFixed";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownScenario: return "UnknownScenario";
    case ErrorCode::UnknownCheck: return "UnknownCheck";
  }
  return "Unknown";
}

// Single exception type carrying a machine-readable code plus a human message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace cosym
