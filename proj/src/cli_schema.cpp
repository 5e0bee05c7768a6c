#include "folab/cli.hpp"

namespace folab {

const std::string& report_schema() {
  static const std::string schema = R"({
  "$schema": "http://json-schema.org/draft-07/schema#",
  "title": "foliation_lab report",
  "type": "object",
  "required": ["input", "command", "options", "diagnostics", "status"],
  "additionalProperties": false,
  "definitions": {
    "leaf": {
      "type": "object",
      "required": ["chart", "class", "code", "well_oriented"],
      "additionalProperties": false,
      "properties": {
        "chart": {"type": "string"},
        "class": {"type": "string", "enum": ["Regular", "SimpleNonDegenerate", "SaddleNode", "NonSimple"]},
        "code": {"type": "string"},
        "well_oriented": {"type": "boolean"}
      }
    },
    "value": {"type": "string"}
  },
  "properties": {
    "input": {"type": "string"},
    "command": {"type": "string", "enum": ["analyze2", "reduce2", "separatrices", "second-type2", "second-type3",
                                           "model-match3", "theorem-main", "indices", "log-criterion"]},
    "options": {
      "type": "object",
      "required": ["jet_order", "max_depth", "trials", "truncation", "resonance_bound", "max_field_degree"],
      "additionalProperties": false,
      "properties": {
        "jet_order": {"type": "integer"},
        "max_depth": {"type": "integer"},
        "trials": {"type": "integer"},
        "truncation": {"type": "integer"},
        "resonance_bound": {"type": "integer"},
        "max_field_degree": {"type": "integer"},
        "seed": {"type": "integer"}
      }
    },
    "kind": {"type": "string", "enum": ["omega2", "omega3", "proj2", "proj3"]},
    "field": {"type": "string"},
    "nu0": {"type": "integer"},
    "mu0": {"type": "integer"},
    "dicritical": {"type": "boolean"},
    "reduction": {
      "type": "object",
      "required": ["blowups", "leaves", "tree"],
      "additionalProperties": false,
      "properties": {
        "blowups": {"type": "integer"},
        "leaves": {"type": "array", "items": {"$ref": "#/definitions/leaf"}},
        "tree": {"type": "string"},
        "dual_graph_ref": {"type": "string"}
      }
    },
    "second_type": {
      "type": "object",
      "required": ["verdict", "witnesses"],
      "additionalProperties": false,
      "properties": {
        "verdict": {"type": "boolean"},
        "witnesses": {"type": "array", "items": {"$ref": "#/definitions/leaf"}}
      }
    },
    "generalized_curve": {"type": "boolean"},
    "separatrices": {
      "type": "array",
      "items": {
        "type": "object",
        "required": ["equation", "jet", "leaf", "tags"],
        "additionalProperties": false,
        "properties": {
          "equation": {"type": "string"},
          "jet": {
            "type": "object",
            "required": ["gamma"],
            "additionalProperties": false,
            "properties": {
              "gamma": {"type": "array", "items": {"type": "string"}},
              "prec": {"type": "integer"}
            }
          },
          "leaf": {"type": "string"},
          "tags": {"type": "array", "items": {"type": "string"}}
        }
      }
    },
    "separatrix_equation": {"type": "string"},
    "identity_check": {
      "type": "object",
      "required": ["nu_form", "nu_dg", "equal"],
      "additionalProperties": false,
      "properties": {
        "nu_form": {"type": "integer"},
        "nu_dg": {"type": "integer"},
        "equal": {"type": "boolean"}
      }
    },
    "indices": {
      "type": "object",
      "required": ["degree"],
      "properties": {
        "degree": {"type": "integer"},
        "expected_bb": {"type": "integer"},
        "curve": {"type": "string"},
        "d0": {"type": "integer"},
        "points": {
          "type": "array",
          "items": {
            "type": "object",
            "required": ["point", "class", "multiplicity", "bb"],
            "properties": {
              "point": {"type": "string"},
              "class": {"type": "string"},
              "multiplicity": {"type": "integer"},
              "bb": {"$ref": "#/definitions/value"},
              "bb_route": {"type": "string"},
              "on_curve": {"type": "boolean"},
              "cs": {"$ref": "#/definitions/value"},
              "gsv": {"$ref": "#/definitions/value"},
              "cs_total": {"$ref": "#/definitions/value"},
              "gsv_total": {"$ref": "#/definitions/value"},
              "relation": {"type": "boolean"}
            }
          }
        },
        "sum_cs": {"$ref": "#/definitions/value"},
        "sum_gsv": {"$ref": "#/definitions/value"},
        "sum_bb": {"$ref": "#/definitions/value"},
        "expected_cs": {"type": "integer"},
        "expected_gsv": {"type": "integer"},
        "cs_ok": {"type": "boolean"},
        "gsv_ok": {"type": "boolean"},
        "bb_ok": {"type": "boolean"},
        "relation_ok": {"type": "boolean"}
      }
    },
    "verdict3": {
      "type": "object",
      "required": ["test"],
      "properties": {
        "test": {"type": "string", "enum": ["second-type3", "model-match3", "theorem-main", "log-criterion"]},
        "verdict": {"type": "string"},
        "model": {"type": "string"},
        "all_simple": {"type": "boolean"},
        "trials_run": {"type": "integer"},
        "trials_used": {"type": "integer"},
        "evidence": {"type": "string"},
        "witness": {
          "type": "object",
          "required": ["section", "trial", "record"],
          "properties": {
            "section": {"type": "string"},
            "trial": {"type": "integer"},
            "record": {"$ref": "#/definitions/leaf"}
          }
        },
        "records": {"type": "array", "items": {"type": "object"}},
        "residues": {"type": "array", "items": {"type": "string"}},
        "hypotheses": {"type": "object"}
      }
    },
    "diagnostics": {
      "type": "array",
      "items": {
        "type": "object",
        "required": ["severity", "message"],
        "additionalProperties": false,
        "properties": {
          "severity": {"type": "string", "enum": ["info", "error"]},
          "message": {"type": "string"}
        }
      }
    },
    "status": {"type": "string", "enum": ["ok", "usage-error", "inconclusive"]}
  }
}
)";
  return schema;
}

}  // namespace folab
