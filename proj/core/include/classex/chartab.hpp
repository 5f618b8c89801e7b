#ifndef CLASSEX_CHARTAB_HPP
#define CLASSEX_CHARTAB_HPP

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "classex/classes.hpp"

namespace classex {

/// One character value as a cyclotomic sum: sum of c_j * zeta_m^{e_j} with
/// rational c_j and m the table conductor.
struct CycValue {
    struct Term {
        long num = 0;
        long den = 1;
        long exp = 0;
    };
    std::vector<Term> terms;
};

struct CharColumn {
    std::uint64_t size = 0;
    std::uint64_t order = 0;
    std::map<unsigned, std::uint32_t> powermap;  // prime -> column index
};

struct CharRow {
    std::uint64_t degree = 0;
    std::vector<CycValue> values;  // one per column
};

/// An ingested complex character table. Parsing checks the degree checksum
/// (sum of squares equals the order, exactly), the class-size sum, and that
/// the first character is trivial.
struct CharacterTable {
    std::string group;
    std::uint64_t order = 0;
    std::uint64_t conductor = 1;
    std::vector<CharColumn> classes;
    std::vector<CharRow> chars;
};

CharacterTable parse_table(const std::string& json_text);
CharacterTable load_table(const std::string& path);

std::complex<long double> eval_value(const CycValue& v, std::uint64_t conductor);

/// Column matching against computed class data, by invariant fingerprint
/// (order, size, power-map structure) rather than position. Columns that
/// stay indistinguishable (Galois-conjugate pairs) form ambiguity groups;
/// inside a group the assignment is by ascending id, and is flagged.
struct ColumnMatch {
    std::vector<std::uint32_t> col_for_class;        // class id -> column
    std::vector<std::vector<std::uint32_t>> ambiguous;  // groups of class ids
};
ColumnMatch match_columns(const ElementTable& table, const ClassData& cd,
                          const CharacterTable& tab);

/// The criterion sum S = sum_chi chi(g)^k / chi(1)^{k-2} for column `col`,
/// evaluated in extended-precision complex arithmetic. 1 lies in C^k exactly
/// when S != 0; the exact tuple count is |C|^k / |G| * S.
struct CriterionResult {
    std::complex<long double> sum;
    bool nonzero = false;
    bool inconclusive = false;      // |sum| fell inside the epsilon band
    long double predicted_raw = 0;  // |C|^k/|G| * Re(sum), before rounding
    mpz_class predicted_count;      // rounded to the nearest integer
    long double rounding_error = 0;
};
CriterionResult eval_criterion(const CharacterTable& tab, std::uint32_t col,
                               std::uint32_t k);

namespace fixtures {
/// Embedded character-table documents (also writable to disk for the CLI).
const char* gl32_json();
const char* psl27_json();
const char* a5_json();
const char* trivial_json();
std::optional<std::string> by_name(const std::string& name);
}  // namespace fixtures

}  // namespace classex

#endif
