#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace ncpc {

/// Base class for every error this library raises on bad input or
/// unusable data. Callers that want blanket isolation (the panel CLI)
/// catch this; tests catch the concrete types.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// series-core
class NonPositiveAfterShift : public Error {
  public:
    using Error::Error;
};
class SeriesTooShort : public Error {
  public:
    using Error::Error;
};
class InsufficientData : public Error {
  public:
    using Error::Error;
};

// trend-filter
class NonContiguous : public Error {
  public:
    using Error::Error;
};

// regime
class NonPositiveGdp : public Error {
  public:
    using Error::Error;
};

// estimate
class EmptyFrame : public Error {
  public:
    using Error::Error;
};
class RankDeficient : public Error {
  public:
    RankDeficient(const std::string& msg, std::vector<std::string> cols)
        : Error(msg), columns(std::move(cols)) {}
    std::vector<std::string> columns;  // offending regressors, when identifiable
};
class NegativeRadicand : public Error {
  public:
    using Error::Error;
};
class EmptySelection : public Error {
  public:
    using Error::Error;
};

// ingest
class ParseError : public Error {
  public:
    using Error::Error;
};
class UnknownCountry : public Error {
  public:
    using Error::Error;
};
class NonMonotonicDates : public Error {
  public:
    using Error::Error;
};

}  // namespace ncpc
