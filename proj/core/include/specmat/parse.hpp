#pragma once

#include <stdexcept>
#include <string>

#include "specmat/model.hpp"
#include "specmat/tuples.hpp"

namespace specmat {

/// Raised on malformed model expressions or tuple config text; the message
/// names the offending position or line.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parses the expression grammar emitted by Model::to_string():
///
///   EXPR  := shift | backshift | bishift
///          | identity(DIM) | zero(DIM)
///          | diag{(Z,DIM),...} | matrix[[Z,...],...]
///          | translate(EXPR,Z) | scale(EXPR,Z)
///          | dsum(EXPR,EXPR) | inflate(EXPR) | dual(EXPR)
///   DIM   := nonnegative integer | inf
///   Z     := complex scalar as printed by complex_to_string
///            (p, p/q, qi, p+qi, p-qi)
///
/// Whitespace is allowed between tokens but not inside scalars. dual(...)
/// accepts any expression and resolves through Model::dual(), so every
/// to_string() output round-trips. Matrix rows must be nonempty, equal
/// length and square.
Model parse_model(const std::string& text);

/// Parses a tuple definition: one `Dk = EXPR` line per diagonal slot,
/// 1-based, contiguous from D1, at least two slots. Blank lines are skipped
/// and `#` starts a comment that runs to the end of the line. Slot order in
/// the file is free; duplicate or missing slots are errors.
DiagonalTuple parse_tuple_config(const std::string& text);

}  // namespace specmat
