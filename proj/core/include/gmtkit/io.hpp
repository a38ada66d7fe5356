#pragma once

#include "gmtkit/chain.hpp"
#include "gmtkit/complex.hpp"
#include "gmtkit/errors.hpp"
#include "gmtkit/families.hpp"
#include "gmtkit/flatnorm.hpp"
#include "gmtkit/varifold.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>

namespace gmt {

using json = nlohmann::json;

/// 17 significant digits, locale independent.
std::string format_number(double x);

/// "all", "ball:cx,cy,r" or "box:x0,y0,x1,y1" (three coordinates per point in
/// R^3). Throws InvalidInput.
Window parse_window(std::string_view text, int ambientDim = 2);
std::string window_to_string(const Window& w, int ambientDim = 2);

/// Error raised while reading a file: names the file, the line (when known)
/// and the offending field.
class FileError : public InvalidInput {
 public:
  FileError(const std::string& file, int line, const std::string& field, const std::string& what);
};

json complex_to_json(const CellComplex& c);
ComplexPtr complex_from_json(const json& j);

template <class Ring>
json chain_to_json(const Chain<Ring>& a, const std::string& complexPath);
json varifold_to_json(const IntegralVarifold& v, const std::string& complexPath);

/// The filling refers to the fill complex by its content id.
template <class Ring>
json cert_to_json(const FlatNormCert<Ring>& cert);

json expectations_to_json(const Expectations& e);

using AnyChain = std::variant<Mod2Chain, IntChain>;

/// Readers. Paths inside chain and varifold files are resolved relative to
/// the file that names them. Errors are FileError.
json read_json_file(const std::filesystem::path& path);
ComplexPtr load_complex(const std::filesystem::path& path);
AnyChain load_chain(const std::filesystem::path& path);
IntegralVarifold load_varifold(const std::filesystem::path& path);

/// Pretty-printed JSON with a trailing newline.
void write_json_file(const std::filesystem::path& path, const json& j);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace gmt
