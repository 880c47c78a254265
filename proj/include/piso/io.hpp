#pragma once

#include <filesystem>
#include <variant>

#include <json.hpp>

#include "piso/pdf.hpp"
#include "piso/pdi.hpp"

//
// JSON file formats
//
//   matrix            {"rows": r, "cols": c, "entries": [[re, im], ...]}   row-major
//   partial function  {"source": [...], "target": [...], "map": {"b": "a", ...}}
//   module            {"blocks": [n1, ...], "lift_dim": m, "generators": [matrix, ...]}
//   module map        {"source": module, "target": module, "action": matrix}
//   pdi               {"map": module map, "domain": [index or matrix, ...]}
//
// A domain entry is either a generator index of the map's source or an
// explicit element.
//

namespace piso::io {

using Json = nlohmann::json;

class ParseError : public Error { public: using Error::Error; };

Json          to_json ( const ComplexMatrix & a );
ComplexMatrix matrix_from_json ( const Json & j );

Json      to_json ( const PartialFn & f );
PartialFn partial_fn_from_json ( const Json & j );

Json          to_json ( const HilbertModule & e );
HilbertModule module_from_json ( const Json & j, const Tolerance & tol = {} );

Json      to_json ( const ModuleMap & c );
ModuleMap module_map_from_json ( const Json & j, const Tolerance & tol = {} );

Json to_json ( const PDI & p );
PDI  pdi_from_json ( const Json & j, const Tolerance & tol = {} );

enum class Kind { matrix, partial_function, module, module_map, pdi };

// decided by the top-level keys; throws ParseError if none match
Kind detect ( const Json & j );

using Object = std::variant< ComplexMatrix, PartialFn, HilbertModule, ModuleMap, PDI >;

Object from_json ( const Json & j, const Tolerance & tol = {} );

// throws ParseError on I/O failure or malformed JSON
Json read_file ( const std::filesystem::path & path );
void write_file ( const std::filesystem::path & path, const Json & j );

}// namespace piso::io
