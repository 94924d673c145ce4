#pragma once

// SPARQL-to-Cypher translation with an embedded dual-semantics oracle.

#include "s2c/cypher_exec.hpp"
#include "s2c/cypher_render.hpp"
#include "s2c/equivalence.hpp"
#include "s2c/errors.hpp"
#include "s2c/graph_relation.hpp"
#include "s2c/interpret.hpp"
#include "s2c/property_graph.hpp"
#include "s2c/rdf_model.hpp"
#include "s2c/schema_catalog.hpp"
#include "s2c/sparql_algebra.hpp"
#include "s2c/sparql_ast.hpp"
#include "s2c/sparql_eval.hpp"
#include "s2c/sparql_parser.hpp"
#include "s2c/translator.hpp"
#include "s2c/value.hpp"
