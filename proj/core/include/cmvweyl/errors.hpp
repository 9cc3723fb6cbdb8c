#ifndef CMVWEYL_ERRORS_HPP
#define CMVWEYL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cmv {

// Error taxonomy shared with the CLI exit-code contract:
//   DomainError -> 3, SingularError -> 4, RankError -> 5.

class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

class SizeError : public DomainError {
 public:
  explicit SizeError(const std::string& what) : DomainError(what) {}
};

class PreconditionError : public DomainError {
 public:
  explicit PreconditionError(const std::string& what) : DomainError(what) {}
};

class SingularError : public std::runtime_error {
 public:
  explicit SingularError(const std::string& what) : std::runtime_error(what) {}
};

class RankError : public std::runtime_error {
 public:
  RankError(const std::string& what, int achieved)
      : std::runtime_error(what), achieved_rank(achieved) {}
  int achieved_rank;
};

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

class BranchError : public std::runtime_error {
 public:
  explicit BranchError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cmv

#endif
