#pragma once

// JSON and CSV encodings. Rationals are always strings "num/den" or "num".

#include "kop/cofree.hpp"
#include "kop/corpus.hpp"
#include "kop/kernels.hpp"
#include "kop/verify.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace kop {

using Json = nlohmann::json;

/// Malformed or unreadable input.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Json rational_to_json(const Rational& x);
/// Accepts "a/b" strings and JSON integers.
Rational rational_from_json(const Json& j);
Json vector_to_json(const Vector& v);
Vector vector_from_json(const Json& j);
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

Json phi_to_json(const PhiVector& a);
PhiVector phi_from_json(const Json& j);

/// Rows "j,n,k,value" for all j, n, k < N in the support range.
std::string structure_constants_csv(const OperationRing& ring, std::size_t truncation);

Json module_to_json(const FpModule& m);
/// `fallback` supplies p, q and variant when the document omits them.
FpModule module_from_json(const Json& j, const RingConfig* fallback = nullptr);

Json uelement_to_json(const UElement& f);
UElement uelement_from_json(const Json& j, const FpModule& m);

Json report_to_json(const IdentityReport& r);
Json report_to_json(const BousfieldReport& r);
Json report_to_json(const ExactnessReport& r);
Json abcong_to_json(const AbcongSolution& s);
Json hom_to_json(const HomGroup& h);

Json read_json_file(const std::string& path);

}  // namespace kop
