#pragma once

#include <string>
#include <vector>

#include "tiltlab/exact_structure.hpp"

namespace tiltlab {

/// A parsed input file: the quiver algebra plus any named module blocks.
struct InputFile {
  Quiver quiver;
  AlgebraPtr algebra;
  std::vector<Module> named_modules;
};

/// Parses the combined text format (quiver declarations + module blocks):
///   module <name> dim <d_1> ... <d_k>
///   act <arrow-label> = [[...],[...]]      # d_tgt x d_src block over F_p
/// Arrow actions omitted from a block act as zero; anything inconsistent with
/// the relations is a load error.
InputFile load_input(const std::string& text);

InputFile load_input_file(const std::string& path);

/// Resolves a module name: file modules first, then the canonical P<k>, S<k>,
/// I<k> (1-based, per idempotent), and "Lambda" for the regular module.
Module resolve_module(const InputFile& in, const std::string& name);

/// Enumerated universe with members renamed to canonical names where they
/// match projectives, simples, injectives, or file modules.
std::vector<Module> labeled_universe(const InputFile& in, const DimVector& bound,
                                     const Budgets& budgets = {});

ExactStructure structure_from_names(const InputFile& in, bool relative,
                                    const std::vector<std::string>& generator_names,
                                    const Budgets& budgets = {});

}  // namespace tiltlab
