#pragma once

// Wire format: UTF-8 JSON documents with canonical key order, so that two
// serializations of equal artifacts are byte-identical and diff cleanly in
// CI. Matrices are arrays of arrays of scalar strings ("a" or "a/b"); zero
// components and zero differentials are omitted; complexes carry an explicit
// window. parse . serialize is the identity and serialize . parse is
// canonicalizing.

#include <cstdint>
#include <string>
#include <variant>

#include "json.hpp"
#include "ninefold/additivity.hpp"

namespace ninefold {

using Json = nlohmann::ordered_json;

// Parameters of a seeded batch run, kept as a first-class document so CI
// configurations round-trip and diff exactly like the algebraic artifacts.
struct Job {
    std::string command;  // additivity | pairing | pipeline | selftest
    FieldSpec field = FieldSpec::rationals();
    std::uint64_t seed = 0;
    int cases = 1;
    int max_rank = 3;
    int window_min = -1;
    int window_max = 1;

    bool operator==(const Job& o) const = default;
};

// Any artifact the command-line front end reads or writes. A "nine" document
// with the first row and column left null parses as the LowerNine alternative
// (the input of complete_lower_nine); all other null patterns are rejected.
using Document = std::variant<ChainComplex, ChainMap, Triangle, CommSquare,
                              NineDiagram, LowerNine, SplitSES, SESMap, Job>;

// Wire name of the alternative held: complex, map, triangle, square, nine,
// lower-nine, ses, endo, or job (lower-nine serializes with type "nine").
const char* document_kind(const Document& d);

Json complex_to_json(const ChainComplex& x);
Json map_to_json(const ChainMap& f);
Json triangle_to_json(const Triangle& t);
Json square_to_json(const CommSquare& s);
Json nine_to_json(const NineDiagram& n);
Json lower_to_json(const LowerNine& l);
Json ses_to_json(const SplitSES& e);
// Endomorphism documents embed the one sequence they act on; maps whose
// source and target sequences differ have no wire form. Err::Validation.
Json endo_to_json(const SESMap& m);
Json job_to_json(const Job& j);

Json document_to_json(const Document& d);

// Err::Parse on malformed structure, unknown keys, bad scalars, or wrong
// matrix dimensions, with the offending field path in the message. Invariants
// enforced by the constructed types themselves (d^2 = 0, chain conditions of
// a Triangle, strict commutation of a CommSquare) surface as their usual
// validation errors.
Document document_from_json(const Json& j);

// Text round-trip: serialize emits two-space-indented JSON with a trailing
// newline; parse reports malformed JSON as Err::Parse with a line number.
std::string serialize_document(const Document& d);
Document parse_document(const std::string& text);

}  // namespace ninefold
