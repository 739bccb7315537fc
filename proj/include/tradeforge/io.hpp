#pragma once
// Serialization.  Text form: optional '#' comment lines, a header
// "v=<v> k=<k> t=<t>", then one signed block per line ("+ 1 2 3"), positives
// first, each ordered by block rank, a line repeated |coef| times.  JSON
// form: {"v", "k", "blocks": [{"block": [...], "coef": n}, ...]}.  A
// decomposition interleaves "# trade <i> kind=<kind> volume=<n>" stanza
// comments between the blocks of its constituents (JSON: a "constituents"
// array), so the file still parses as the plain sum.

#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "collection.hpp"
#include "combinatorics.hpp"
#include "halvings.hpp"

namespace tradeforge {

namespace detail {

inline void write_signed_lines(std::ostream& out, const SignedCollection& f, bool one_based, bool positive) {
  const int shift = one_based ? 1 : 0;
  for (const auto& [b, c] : f.entries()) {
    if ((c > 0) != positive) continue;
    const std::int64_t reps = c > 0 ? c : -c;
    for (std::int64_t i = 0; i < reps; ++i) {
      out << (positive ? '+' : '-');
      for (int x : b) out << ' ' << x + shift;
      out << '\n';
    }
  }
}

}  // namespace detail

inline void write_collection(std::ostream& out, const SignedCollection& f, int t = 2,
                             bool one_based = false, const std::vector<std::string>& comments = {}) {
  for (const auto& c : comments) out << "# " << c << '\n';
  out << "v=" << f.v() << " k=" << f.k() << " t=" << t << '\n';
  detail::write_signed_lines(out, f, one_based, true);
  detail::write_signed_lines(out, f, one_based, false);
}

inline void write_decomposition(std::ostream& out, const TradeDecomposition& d, int t = 2,
                                bool one_based = false, const std::vector<std::string>& comments = {}) {
  for (const auto& c : comments) out << "# " << c << '\n';
  out << "v=" << d.v << " k=" << d.k << " t=" << t << '\n';
  int i = 0;
  for (const auto& c : d.constituents) {
    out << "# trade " << ++i << " kind=" << to_string(c.kind) << " volume=" << volume(c.trade).value
        << '\n';
    detail::write_signed_lines(out, c.trade, one_based, true);
    detail::write_signed_lines(out, c.trade, one_based, false);
  }
}

struct ParsedCollection {
  SignedCollection collection{3, 3};
  int t = 2;
};

namespace detail {

inline ParsedCollection read_collection_text(std::istream& in, bool one_based) {
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw std::runtime_error("line " + std::to_string(lineno) + ": " + msg);
  };

  int v = -1, k = -1, t = 2;
  // header
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos) fail("expected key=value in header, got '" + tok + "'");
      const std::string key = tok.substr(0, eq);
      int val = 0;
      try {
        std::size_t used = 0;
        val = std::stoi(tok.substr(eq + 1), &used);
        if (used != tok.size() - eq - 1) throw std::invalid_argument("");
      } catch (const std::exception&) {
        fail("bad integer in header token '" + tok + "'");
      }
      if (key == "v") v = val;
      else if (key == "k") k = val;
      else if (key == "t") t = val;
      else fail("unknown header key '" + key + "'");
    }
    break;
  }
  if (v < 0 || k < 0) fail("missing header (need v= and k=)");

  ParsedCollection out;
  try {
    out.collection = SignedCollection(v, k);
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
  out.t = t;

  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ss(line);
    std::string sign;
    ss >> sign;
    if (sign != "+" && sign != "-") fail("expected '+' or '-', got '" + sign + "'");
    std::vector<int> elems;
    int x;
    while (ss >> x) elems.push_back(x - (one_based ? 1 : 0));
    if (!ss.eof()) fail("trailing junk after block");
    if (static_cast<int>(elems.size()) != k) {
      fail("expected " + std::to_string(k) + " elements, got " + std::to_string(elems.size()));
    }
    try {
      out.collection.add(Block::of(std::move(elems)), sign == "+" ? 1 : -1);
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
  }
  return out;
}

inline ParsedCollection read_collection_json(std::istream& in, bool one_based) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("bad JSON: ") + e.what());
  }
  try {
    ParsedCollection out;
    out.collection = SignedCollection(j.at("v").get<int>(), j.at("k").get<int>());
    out.t = j.value("t", 2);
    const int shift = one_based ? 1 : 0;
    auto add_blocks = [&](const nlohmann::json& blocks) {
      for (const auto& entry : blocks) {
        auto elems = entry.at("block").get<std::vector<int>>();
        for (int& x : elems) x -= shift;
        out.collection.add(Block::of(std::move(elems)), entry.at("coef").get<std::int64_t>());
      }
    };
    if (j.contains("blocks")) {
      add_blocks(j.at("blocks"));
    } else {
      // a decomposition reads as the plain sum of its constituents, like the
      // text form where stanza markers are comments
      for (const auto& c : j.at("constituents")) add_blocks(c.at("blocks"));
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("bad JSON collection: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("bad JSON collection: ") + e.what());
  }
}

}  // namespace detail

/// Reads either format; JSON is detected by a leading '{'.  A decomposition
/// file (either format) reads as the flat sum of its constituents.  The
/// one_based flag shifts elements down by one in both formats.
inline ParsedCollection read_collection(std::istream& in, bool one_based = false) {
  int c = in.peek();
  while (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
    in.get();
    c = in.peek();
  }
  if (c == '{') return detail::read_collection_json(in, one_based);
  return detail::read_collection_text(in, one_based);
}

inline nlohmann::ordered_json collection_to_json(const SignedCollection& f, bool one_based = false) {
  nlohmann::ordered_json j;
  j["v"] = f.v();
  j["k"] = f.k();
  auto& blocks = j["blocks"] = nlohmann::ordered_json::array();
  const int shift = one_based ? 1 : 0;
  for (const auto& [b, c] : f.entries()) {
    nlohmann::ordered_json e;
    auto& elems = e["block"] = nlohmann::ordered_json::array();
    for (int x : b) elems.push_back(x + shift);
    e["coef"] = c;
    blocks.push_back(std::move(e));
  }
  return j;
}

inline nlohmann::ordered_json decomposition_to_json(const TradeDecomposition& d, bool one_based = false) {
  nlohmann::ordered_json j;
  j["v"] = d.v;
  j["k"] = d.k;
  auto& parts = j["constituents"] = nlohmann::ordered_json::array();
  for (const auto& c : d.constituents) {
    nlohmann::ordered_json e;
    e["kind"] = to_string(c.kind);
    e["volume"] = volume(c.trade).value;
    e["blocks"] = collection_to_json(c.trade, one_based)["blocks"];
    parts.push_back(std::move(e));
  }
  return j;
}

}  // namespace tradeforge
