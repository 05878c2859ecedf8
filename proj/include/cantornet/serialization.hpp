// Copyright (c) CantorNet contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "cantornet/dnf.hpp"
#include "cantornet/relu_net.hpp"

namespace cantor {

/// Raised on malformed input; `where` locates the offending element
/// (byte offset for JSON syntax errors, JSON path for semantic ones).
class ParseError : public std::runtime_error {
  public:
    ParseError(const std::string& what, std::string where)
        : std::runtime_error(what + " (at " + where + ")"), where_(std::move(where)) {}
    const std::string& where() const { return where_; }

  private:
    std::string where_;
};

// Network file format: UTF-8 JSON with `final_clamp`, `layers` (arrays of
// rational strings "p/q", integers may omit the denominator) and `meta`.
// Round-trips are bit-exact; serializing twice yields identical bytes.
std::string serialize(const ReluNetwork& net);
ReluNetwork deserialize_network(std::string_view text);

std::string serialize(const DnfExpression& expr);
DnfExpression deserialize_dnf(std::string_view text);

void save_text_file(const std::string& path, std::string_view contents);
std::string load_text_file(const std::string& path);

}  // namespace cantor
