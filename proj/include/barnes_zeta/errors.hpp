#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace barnes {

enum class ErrorKind {
  Domain,
  PoleAt,
  Range,
  DegenerateRatio,
  ShiftOutOfRange,
  GuardSaturated,
  NonConvergent,
  TooCloseToPole,
  NotEnoughMethods,
  InsufficientSpan,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorKind::Domain, what) {}
};

class PoleError : public Error {
 public:
  explicit PoleError(int pole);
  int pole() const noexcept { return pole_; }

 private:
  int pole_;
};

class RangeError : public Error {
 public:
  explicit RangeError(const std::string& what) : Error(ErrorKind::Range, what) {}
};

class DegenerateRatio : public Error {
 public:
  explicit DegenerateRatio(const std::string& what) : Error(ErrorKind::DegenerateRatio, what) {}
};

class ShiftOutOfRange : public Error {
 public:
  explicit ShiftOutOfRange(const std::string& what) : Error(ErrorKind::ShiftOutOfRange, what) {}
};

class GuardSaturated : public Error {
 public:
  explicit GuardSaturated(const std::string& what) : Error(ErrorKind::GuardSaturated, what) {}
};

class NonConvergent : public Error {
 public:
  explicit NonConvergent(const std::string& what) : Error(ErrorKind::NonConvergent, what) {}
};

class TooCloseToPole : public Error {
 public:
  explicit TooCloseToPole(const std::string& what) : Error(ErrorKind::TooCloseToPole, what) {}
};

class NotEnoughMethods : public Error {
 public:
  explicit NotEnoughMethods(const std::string& what) : Error(ErrorKind::NotEnoughMethods, what) {}
};

class InsufficientSpan : public Error {
 public:
  explicit InsufficientSpan(const std::string& what) : Error(ErrorKind::InsufficientSpan, what) {}
};

}  // namespace barnes
