// Copyright 2026 The copysim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>

namespace copysim {

using Symbol = char32_t;
using SymbolString = std::u32string;

enum class Encoding { kBytes, kUtf8 };

/// Parses "bytes" or "utf8".
Encoding parse_encoding(std::string_view name);

/// Bytes become symbols 0..255; UTF-8 is decoded to code points
/// (kInvalidEncoding on malformed input).
SymbolString decode_text(std::string_view bytes, Encoding encoding);

/// Order-k character model.
///
/// Counts are tabulated over every position of the corpus, with the context
/// of the first k positions padded by a start-of-text marker. Probabilities
/// are relative frequencies for observed (context, symbol) pairs; unobserved
/// pairs get the add-one estimate (count + 1) / (context total + |alphabet|).
class NGramModel {
 public:
  /// Context padding; lies outside the Unicode range so it never collides
  /// with a decoded symbol.
  static constexpr Symbol kBoundary = 0x110000;

  NGramModel(std::size_t order, std::set<Symbol> alphabet,
             std::map<SymbolString, std::map<Symbol, std::size_t>> counts);

  std::size_t order() const { return order_; }
  const std::set<Symbol>& alphabet() const { return alphabet_; }
  const std::map<SymbolString, std::map<Symbol, std::size_t>>& counts() const { return counts_; }

  /// P(symbol | context); the context is the preceding `order` symbols,
  /// boundary-padded.
  double probability(const SymbolString& context, Symbol symbol) const;

  /// Context of position `i` of `text`.
  SymbolString context_at(const SymbolString& text, std::size_t i) const;

 private:
  std::size_t order_;
  std::set<Symbol> alphabet_;
  std::map<SymbolString, std::map<Symbol, std::size_t>> counts_;
};

/// kCorpusTooShort unless the corpus is longer than `order`. Symbols in
/// `extra_alphabet` join the alphabet without being counted.
NGramModel build_ngram(const SymbolString& corpus, std::size_t order,
                       const std::set<Symbol>& extra_alphabet = {});

/// Mean -log2 P(symbol | context) over every position of `text`, in bits.
double observer_surprisal(const NGramModel& model, const SymbolString& text);

/// Surprisal of a reader who memorized `memorized`: 0 while `text` follows
/// it, infinite at the first departure.
double memorized_surprisal(const SymbolString& memorized, const SymbolString& text);

}  // namespace copysim
