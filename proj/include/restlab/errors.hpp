#pragma once

#include <stdexcept>
#include <string>

namespace restlab {

// Failure categories surfaced through the library API.  Each maps 1:1 onto a
// documented precondition or capacity limit; see the throwing call sites.
enum class Err {
  NonPrime,
  EvenCharacteristic,
  TooLarge,
  NoIrreducibleFound,
  DivisionByZero,
  InputTooLarge,
  EmptySet,
  ZeroFunction,
  NotASlice,
  NotRegular,
  ClassMismatch,
  InfeasibleSpec,
  ParallelTerms,
  TableMismatch,
  Infeasible,
  MinusOneSquare,
  InvalidArgument,
  ParseError,
};

const char* err_name(Err e);

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& what)
      : std::runtime_error(std::string(err_name(code)) + ": " + what), code_(code) {}
  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& what) { throw Error(code, what); }

}  // namespace restlab
