#pragma once

#include <stdexcept>
#include <string>

namespace pgrass {

// Every failure mode in the library throws Error with one of these codes.
// Tests match on the code, messages are for humans.
enum class ErrorCode {
  Unsupported,
  DivisionByZero,
  NoInvolution,
  AmbientMismatch,
  DimensionOutOfRange,
  BadParameters,
  UnsupportedDegenerate,
  NotSingular,
  LevelMismatch,
  InexactDivision,
  PreconditionFailed,
  TheoremViolation,
  NotAnIsometry,
  NotAnEdge,
  Refused,
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::NoInvolution: return "NoInvolution";
    case ErrorCode::AmbientMismatch: return "AmbientMismatch";
    case ErrorCode::DimensionOutOfRange: return "DimensionOutOfRange";
    case ErrorCode::BadParameters: return "BadParameters";
    case ErrorCode::UnsupportedDegenerate: return "UnsupportedDegenerate";
    case ErrorCode::NotSingular: return "NotSingular";
    case ErrorCode::LevelMismatch: return "LevelMismatch";
    case ErrorCode::InexactDivision: return "InexactDivision";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::TheoremViolation: return "TheoremViolation";
    case ErrorCode::NotAnIsometry: return "NotAnIsometry";
    case ErrorCode::NotAnEdge: return "NotAnEdge";
    case ErrorCode::Refused: return "Refused";
  }
  return "UnknownError";
}

struct Error : std::runtime_error {
  ErrorCode code;
  Error(ErrorCode c, const std::string& msg)
      : std::runtime_error(std::string(error_code_name(c)) + ": " + msg), code(c) {}
};

[[noreturn]] inline void fail(ErrorCode c, const std::string& msg) { throw Error(c, msg); }

inline void require(bool ok, ErrorCode c, const std::string& msg) {
  if (!ok) fail(c, msg);
}

// The five supported families of finite classical polar spaces.
enum class Kind {
  symplectic,
  hermitian,
  orthogonal_plus,
  orthogonal_minus,
  orthogonal_odd,
};

inline const char* kind_name(Kind k) {
  switch (k) {
    case Kind::symplectic: return "symplectic";
    case Kind::hermitian: return "hermitian";
    case Kind::orthogonal_plus: return "orthogonal_plus";
    case Kind::orthogonal_minus: return "orthogonal_minus";
    case Kind::orthogonal_odd: return "orthogonal_odd";
  }
  return "?";
}

inline Kind parse_kind(const std::string& s) {
  if (s == "symplectic") return Kind::symplectic;
  if (s == "hermitian") return Kind::hermitian;
  if (s == "orthogonal_plus") return Kind::orthogonal_plus;
  if (s == "orthogonal_minus") return Kind::orthogonal_minus;
  if (s == "orthogonal_odd") return Kind::orthogonal_odd;
  fail(ErrorCode::BadParameters, "unknown kind '" + s + "'");
}

inline bool is_orthogonal(Kind k) {
  return k == Kind::orthogonal_plus || k == Kind::orthogonal_minus ||
         k == Kind::orthogonal_odd;
}

// 2*(mu+nu) for the Stanton parameters: 0 alternating, 1 hermitian, 2 symmetric.
inline int munu_sum2(Kind k) {
  if (k == Kind::symplectic) return 0;
  if (k == Kind::hermitian) return 1;
  return 2;
}

// Ambient dimension of the standard model with Witt index d.
inline int default_n_amb(Kind k, int d) {
  switch (k) {
    case Kind::symplectic: return 2 * d;
    case Kind::hermitian: return 2 * d;
    case Kind::orthogonal_plus: return 2 * d;
    case Kind::orthogonal_minus: return 2 * d + 2;
    case Kind::orthogonal_odd: return 2 * d + 1;
  }
  return 2 * d;
}

}  // namespace pgrass
