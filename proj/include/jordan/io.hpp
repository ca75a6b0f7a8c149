#pragma once

#include "jordan/crossed.hpp"
#include "jordan/unified.hpp"

#include <filesystem>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace jordan {

/// Error in a text format, carrying the 1-based line number. The path
/// loaders rethrow with the file path prefixed to the message.
class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

/// Algebra format: `field Q` or `field GF <p>`, `dim <n>`, then one
/// `c <i> <j> <k> <scalar>` per nonzero structure constant with i <= j
/// (commutativity is stored once). `#` starts a comment; blank lines are
/// skipped. Unknown directives, out-of-range indices, i > j, duplicate
/// entries, and char-2 fields are errors.
Algebra parse_algebra(const std::string& text);

/// Canonical form: header, then entries sorted by (i, j, k) with zeros
/// omitted. Equal algebras serialize byte-identically and roundtrip through
/// parse_algebra.
std::string serialize_algebra(const Algebra& a);

/// Dense matrix: one row per non-comment line, cols whitespace-separated
/// scalars.
Matrix parse_matrix(const std::string& text, const FieldSpec& f, std::size_t rows,
                    std::size_t cols);

/// List of vectors of length n, one per non-comment line.
std::vector<Vec> parse_basis(const std::string& text, const FieldSpec& f, std::size_t n);

/// Maps an algebra reference (the token after `A`, `V`, or `E`) to a loaded
/// algebra; the path loaders resolve relative references against the
/// referencing file's directory.
using AlgebraResolver = std::function<Algebra(const std::string& ref)>;

/// Extending-datum format: `A <algebra-ref>`, `dimV <n>`, then sparse
/// entries `actr i j k s` (i, k < dimV, j < dimA), `actl i j k s`
/// (i < dimV, j, k < dimA), `f i j k s` and `mulv i j k s` (i <= j < dimV;
/// k < dimA resp. k < dimV).
ExtendingDatum parse_datum(const std::string& text, const AlgebraResolver& resolve);
std::string serialize_datum(const ExtendingDatum& d, const std::string& algebra_ref);

/// Crossed-system format: `A <algebra-ref>`, `V <algebra-ref>`, then `actl`
/// and `f` entries as in the datum format.
CrossedSystem parse_crossed(const std::string& text, const AlgebraResolver& resolve);
std::string serialize_crossed(const CrossedSystem& cs, const std::string& a_ref,
                              const std::string& v_ref);

/// Extension format: `E`, `A`, `V` algebra references, then `i` introducing
/// dim(E) rows of dim(A) scalars (the inclusion) and `pi` introducing
/// dim(V) rows of dim(E) scalars (the projection).
Extension parse_extension(const std::string& text, const AlgebraResolver& resolve);

/// Action format: `A <algebra-ref>`, then each `gen` introduces dim(A) rows
/// of dim(A) scalars. Returns the algebra and the generator matrices;
/// closure and automorphism checks live in generate_group.
std::pair<Algebra, std::vector<Matrix>> parse_action(const std::string& text,
                                                     const AlgebraResolver& resolve);

Algebra load_algebra(const std::filesystem::path& path);
ExtendingDatum load_datum(const std::filesystem::path& path);
CrossedSystem load_crossed(const std::filesystem::path& path);
Extension load_extension(const std::filesystem::path& path);
std::pair<Algebra, std::vector<Matrix>> load_action(const std::filesystem::path& path);
Matrix load_matrix(const std::filesystem::path& path, const FieldSpec& f, std::size_t rows,
                   std::size_t cols);
std::vector<Vec> load_basis(const std::filesystem::path& path, const FieldSpec& f,
                            std::size_t n);

std::string read_text_file(const std::filesystem::path& path);

} // namespace jordan
