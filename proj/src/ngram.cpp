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

#include "copysim/ngram.hpp"

#include <cmath>
#include <limits>

#include "copysim/error.hpp"

namespace copysim {

Encoding parse_encoding(std::string_view name) {
  if (name == "bytes") return Encoding::kBytes;
  if (name == "utf8" || name == "utf-8") return Encoding::kUtf8;
  throw Error(ErrorKind::kInvalidEncoding, "unknown encoding '" + std::string(name) + "'");
}

SymbolString decode_text(std::string_view bytes, Encoding encoding) {
  SymbolString out;
  if (encoding == Encoding::kBytes) {
    for (unsigned char c : bytes) out.push_back(c);
    return out;
  }
  std::size_t i = 0;
  auto fail = [&] {
    throw Error(ErrorKind::kInvalidEncoding, "malformed UTF-8 at byte " + std::to_string(i));
  };
  while (i < bytes.size()) {
    const auto lead = static_cast<unsigned char>(bytes[i]);
    std::size_t extra = 0;
    char32_t cp = 0;
    if (lead < 0x80) {
      extra = 0;
      cp = lead;
    } else if ((lead & 0xE0) == 0xC0) {
      extra = 1;
      cp = lead & 0x1F;
    } else if ((lead & 0xF0) == 0xE0) {
      extra = 2;
      cp = lead & 0x0F;
    } else if ((lead & 0xF8) == 0xF0) {
      extra = 3;
      cp = lead & 0x07;
    } else {
      fail();
    }
    if (i + extra >= bytes.size()) fail();
    for (std::size_t k = 1; k <= extra; ++k) {
      const auto c = static_cast<unsigned char>(bytes[i + k]);
      if ((c & 0xC0) != 0x80) fail();
      cp = (cp << 6) | (c & 0x3F);
    }
    static constexpr char32_t kMin[] = {0, 0x80, 0x800, 0x10000};
    if (cp < kMin[extra] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) fail();
    out.push_back(cp);
    i += extra + 1;
  }
  return out;
}

NGramModel::NGramModel(std::size_t order, std::set<Symbol> alphabet,
                       std::map<SymbolString, std::map<Symbol, std::size_t>> counts)
    : order_(order), alphabet_(std::move(alphabet)), counts_(std::move(counts)) {
  for (const auto& [context, table] : counts_) {
    if (context.size() != order_ || table.empty()) {
      throw Error(ErrorKind::kInvalidDistribution, "malformed n-gram table");
    }
  }
}

SymbolString NGramModel::context_at(const SymbolString& text, std::size_t i) const {
  SymbolString ctx(order_, kBoundary);
  for (std::size_t k = 0; k < order_; ++k) {
    if (i + k >= order_) ctx[k] = text[i + k - order_];
  }
  return ctx;
}

double NGramModel::probability(const SymbolString& context, Symbol symbol) const {
  if (alphabet_.count(symbol) == 0) {
    throw Error(ErrorKind::kSymbolNotInAlphabet,
                "symbol U+" + std::to_string(static_cast<unsigned long>(symbol)) +
                    " is not in the model alphabet");
  }
  std::size_t total = 0, count = 0;
  if (auto it = counts_.find(context); it != counts_.end()) {
    for (const auto& [s, c] : it->second) total += c;
    if (auto jt = it->second.find(symbol); jt != it->second.end()) count = jt->second;
  }
  if (count > 0) return static_cast<double>(count) / static_cast<double>(total);
  return 1.0 / static_cast<double>(total + alphabet_.size());
}

NGramModel build_ngram(const SymbolString& corpus, std::size_t order,
                       const std::set<Symbol>& extra_alphabet) {
  if (corpus.size() <= order) {
    throw Error(ErrorKind::kCorpusTooShort, "corpus of length " + std::to_string(corpus.size()) +
                                                " is too short for order " + std::to_string(order));
  }
  std::set<Symbol> alphabet(corpus.begin(), corpus.end());
  alphabet.insert(extra_alphabet.begin(), extra_alphabet.end());
  NGramModel shape(order, {}, {});
  std::map<SymbolString, std::map<Symbol, std::size_t>> counts;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    ++counts[shape.context_at(corpus, i)][corpus[i]];
  }
  return NGramModel(order, std::move(alphabet), std::move(counts));
}

double observer_surprisal(const NGramModel& model, const SymbolString& text) {
  if (text.empty()) return 0.0;
  double bits = 0.0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    bits -= std::log2(model.probability(model.context_at(text, i), text[i]));
  }
  return bits / static_cast<double>(text.size());
}

double memorized_surprisal(const SymbolString& memorized, const SymbolString& text) {
  if (text.size() > memorized.size() || memorized.compare(0, text.size(), text) != 0) {
    return std::numeric_limits<double>::infinity();
  }
  return 0.0;
}

}  // namespace copysim
