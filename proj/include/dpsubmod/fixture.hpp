#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dpsubmod/set_function.hpp"

namespace dpsubmod {

/// Textual set-function records.
///
/// A record is a block of "key value..." lines starting with a `kind` line;
/// `#` starts a comment. Supported kinds:
///
///   kind cut            kind coverage        kind modular         kind explicit-table
///   n 3                 n 2                  n 3                  n 2
///   edge 1 2 1.0        sign +1              weights 1 -2 0.5     m 3.5
///   edge 2 3 1.0        set 1 a              ...                  values 0 1 1 0
///                       set 2 a b
///
/// Elements are 1-based. Coverage universe items are arbitrary tokens (at
/// most 64 distinct). explicit-table lists all 2^n values, index = mask,
/// and supports n <= 12; `m` is optional (defaults to max |value|).
SetFunction parse_function_record(std::istream& in);
SetFunction parse_function_record(const std::string& text);

/// Parses consecutive records until end of stream. A new `kind` line starts
/// the next record.
std::vector<SetFunction> parse_function_sequence(std::istream& in);
std::vector<SetFunction> parse_function_sequence(const std::string& text);

std::vector<SetFunction> load_function_sequence(const std::string& path);

}  // namespace dpsubmod
