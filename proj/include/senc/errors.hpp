#ifndef SENC_ERRORS_HPP
#define SENC_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace senc {

// Pipeline errors carry a stable kind tag so callers (and the CLI) can
// report "Kind: detail" without string matching on free-form messages.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& detail)
      : std::runtime_error(kind + ": " + detail), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

struct MissingChannel : Error {
  explicit MissingChannel(const std::string& d) : Error("MissingChannel", d) {}
};

struct MalformedCsv : Error {
  explicit MalformedCsv(const std::string& d) : Error("MalformedCsv", d) {}
};

struct EmptyChannel : Error {
  explicit EmptyChannel(const std::string& d) : Error("EmptyChannel", d) {}
};

struct NoOverlap : Error {
  explicit NoOverlap(const std::string& d) : Error("NoOverlap", d) {}
};

struct SeriesTooShort : Error {
  explicit SeriesTooShort(const std::string& d) : Error("SeriesTooShort", d) {}
};

struct ZeroVariance : Error {
  explicit ZeroVariance(const std::string& d) : Error("ZeroVariance", d) {}
};

struct FamilyMismatch : Error {
  explicit FamilyMismatch(const std::string& d) : Error("FamilyMismatch", d) {}
};

struct TooFewPoints : Error {
  explicit TooFewPoints(const std::string& d) : Error("TooFewPoints", d) {}
};

struct LengthMismatch : Error {
  explicit LengthMismatch(const std::string& d) : Error("LengthMismatch", d) {}
};

struct NonFiniteObjective : Error {
  explicit NonFiniteObjective(const std::string& d) : Error("NonFiniteObjective", d) {}
};

struct EmptyModelSet : Error {
  explicit EmptyModelSet(const std::string& d) : Error("EmptyModelSet", d) {}
};

struct RaggedReport : Error {
  explicit RaggedReport(const std::string& d) : Error("RaggedReport", d) {}
};

}  // namespace senc

#endif
