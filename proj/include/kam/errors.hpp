#pragma once

#include <stdexcept>
#include <string>

namespace kam {

// Common base so callers can catch everything thrown by this library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error { public: using Error::Error; };
class AlgebraMismatch : public Error { public: using Error::Error; };
class NotHermitian : public Error { public: using Error::Error; };
class NotPositiveDefinite : public Error { public: using Error::Error; };
class NotInImage : public Error { public: using Error::Error; };
class OddDimension : public Error { public: using Error::Error; };
class ConvergenceFailure : public Error { public: using Error::Error; };
class FunctionDomainError : public Error { public: using Error::Error; };
class InvalidSpectrumData : public Error { public: using Error::Error; };
class WeightMismatch : public Error { public: using Error::Error; };
class ParseError : public Error { public: using Error::Error; };
class ShapeError : public Error { public: using Error::Error; };
class ArityError : public Error { public: using Error::Error; };
class UnknownSuite : public Error { public: using Error::Error; };

}  // namespace kam
