#pragma once

// JSON forms of words, automorphisms, currents and marked graphs. Every
// document carries "format": 1. Lengths may be given as numbers or as
// decimal strings; strings are kept verbatim so a file round-trips exactly.

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "outerspace/automorphism.hpp"
#include "outerspace/current.hpp"
#include "outerspace/marked_graph.hpp"
#include "outerspace/word.hpp"

namespace outerspace {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

inline std::string generator_name(int i) { return std::string(1, static_cast<char>('a' + i - 1)); }

inline int generator_index(const std::string& name, int rank) {
  if (name.size() != 1 || name[0] < 'a' || name[0] - 'a' + 1 > rank) {
    throw MalformedInput("'" + name + "' is not a generator of rank " + std::to_string(rank));
  }
  return name[0] - 'a' + 1;
}

inline void check_format(const Json& j) {
  if (!j.is_object()) throw MalformedInput("expected a JSON object");
  if (j.contains("format") && j.at("format") != kFormatVersion) {
    throw UnsupportedInput("unsupported format version " + j.at("format").dump());
  }
}

template <class T>
T field(const Json& j, const char* key) {
  if (!j.contains(key)) throw MalformedInput(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw MalformedInput(std::string("field '") + key + "' has the wrong type");
  }
}

inline double parse_decimal(const std::string& text) {
  const char* begin = text.c_str();
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0' || errno == ERANGE) throw MalformedInput("'" + text + "' is not a number");
  return v;
}

// ---------------------------------------------------------------------------
// Automorphisms.

inline const char* move_kind_name(MoveKind k) {
  switch (k) {
    case MoveKind::RightMultiply:
      return "right_multiply";
    case MoveKind::LeftMultiply:
      return "left_multiply";
    case MoveKind::Invert:
      return "invert";
    case MoveKind::Transpose:
      return "transpose";
  }
  return "";
}

inline Json to_json(const Automorphism& phi) {
  Json j{{"format", kFormatVersion}, {"rank", phi.rank()}};
  if (phi.invertible()) {
    Json moves = Json::array();
    for (const auto& m : *phi.moves()) {
      Json mj{{"kind", move_kind_name(m.kind)}, {"target", generator_name(m.target)}};
      if (m.kind == MoveKind::RightMultiply || m.kind == MoveKind::LeftMultiply) {
        mj["by"] = generator_name(m.other);
        mj["inverse"] = m.inverse;
      } else if (m.kind == MoveKind::Transpose) {
        mj["with"] = generator_name(m.other);
      }
      moves.push_back(mj);
    }
    j["moves"] = moves;
  } else {
    Json images = Json::object();
    for (int i = 1; i <= phi.rank(); ++i) images[generator_name(i)] = format_word(phi.image(i));
    j["images"] = images;
  }
  return j;
}

inline Automorphism automorphism_from_json(const Json& j) {
  check_format(j);
  const int rank = field<int>(j, "rank");
  if (rank < 2 || rank > 26) throw MalformedInput("rank out of range");
  if (j.contains("moves")) {
    std::vector<NielsenMove> moves;
    for (const auto& mj : j.at("moves")) {
      const auto kind = field<std::string>(mj, "kind");
      const int target = generator_index(field<std::string>(mj, "target"), rank);
      if (kind == "right_multiply" || kind == "left_multiply") {
        const int by = generator_index(field<std::string>(mj, "by"), rank);
        const bool inv = mj.contains("inverse") ? field<bool>(mj, "inverse") : false;
        moves.push_back(kind == "right_multiply" ? NielsenMove::right_multiply(target, by, inv)
                                                 : NielsenMove::left_multiply(target, by, inv));
      } else if (kind == "invert") {
        moves.push_back(NielsenMove::invert(target));
      } else if (kind == "transpose") {
        moves.push_back(NielsenMove::transpose(target, generator_index(field<std::string>(mj, "with"), rank)));
      } else {
        throw MalformedInput("unknown move kind '" + kind + "'");
      }
    }
    return Automorphism::from_moves(rank, std::move(moves));
  }
  if (j.contains("images")) {
    std::vector<Word> images;
    for (int i = 1; i <= rank; ++i) {
      images.push_back(parse_word(field<std::string>(j.at("images"), generator_name(i).c_str()), rank));
    }
    return Automorphism::from_images(std::move(images));
  }
  throw MalformedInput("automorphism needs 'moves' or 'images'");
}

// ---------------------------------------------------------------------------
// Currents.

inline Json to_json(const RationalCurrent& nu) {
  Json atoms = Json::array();
  for (const auto& a : nu.atoms()) atoms.push_back({{"class", format_word(a.cls)}, {"weight", a.weight}});
  return {{"format", kFormatVersion}, {"rank", nu.rank()}, {"atoms", atoms}};
}

inline RationalCurrent current_from_json(const Json& j, int rank_hint = 0) {
  check_format(j);
  const int rank = j.contains("rank") ? field<int>(j, "rank") : rank_hint;
  if (rank < 2) throw MalformedInput("current needs a rank");
  if (rank_hint != 0) require_same_rank(rank_hint, rank);
  std::vector<std::pair<Word, double>> atoms;
  for (const auto& a : field<Json>(j, "atoms")) {
    const Word w = parse_word(field<std::string>(a, "class"), rank);
    const Json& wj = a.at("weight");
    const double weight = wj.is_string() ? parse_decimal(wj.get<std::string>()) : field<double>(a, "weight");
    atoms.emplace_back(w, weight);
  }
  return RationalCurrent::from_atoms(rank, atoms);
}

// ---------------------------------------------------------------------------
// Marked graphs.

inline std::string step_token(const MarkedGraph& g, Step s) { return g.edge(s.edge).id + (s.forward ? "+" : "-"); }

inline Json to_json(const MarkedGraph& g) {
  Json edges = Json::array();
  for (const auto& e : g.edges()) {
    Json ej{{"id", e.id}, {"from", g.vertex_ids()[e.tail]}, {"to", g.vertex_ids()[e.head]}};
    if (!e.length_text.empty()) {
      ej["length"] = e.length_text;
    } else {
      ej["length"] = e.length;
    }
    edges.push_back(ej);
  }
  Json marking = Json::object();
  for (int i = 1; i <= g.rank(); ++i) {
    Json path = Json::array();
    for (Step s : g.marking(i)) path.push_back(step_token(g, s));
    marking[generator_name(i)] = path;
  }
  return {{"format", kFormatVersion},
          {"rank", g.rank()},
          {"vertices", g.vertex_ids()},
          {"edges", edges},
          {"basepoint", g.vertex_ids()[g.basepoint()]},
          {"marking", marking}};
}

inline MarkedGraph graph_from_json(const Json& j) {
  check_format(j);
  const int rank = field<int>(j, "rank");
  if (rank < 2 || rank > 26) throw MalformedInput("rank out of range");
  const auto vertices = field<std::vector<std::string>>(j, "vertices");
  std::map<std::string, int> vindex;
  for (std::size_t i = 0; i < vertices.size(); ++i) vindex[vertices[i]] = static_cast<int>(i);
  auto vertex = [&](const std::string& id) {
    const auto it = vindex.find(id);
    if (it == vindex.end()) throw MalformedInput("unknown vertex '" + id + "'");
    return it->second;
  };
  std::vector<Edge> edges;
  std::map<std::string, int> eindex;
  for (const auto& ej : field<Json>(j, "edges")) {
    Edge e;
    e.id = field<std::string>(ej, "id");
    e.tail = vertex(field<std::string>(ej, "from"));
    e.head = vertex(field<std::string>(ej, "to"));
    if (!ej.contains("length")) throw MalformedInput("edge '" + e.id + "' has no length");
    const Json& lj = ej.at("length");
    if (lj.is_string()) {
      e.length_text = lj.get<std::string>();
      e.length = parse_decimal(e.length_text);
    } else if (lj.is_number()) {
      e.length = lj.get<double>();
    } else {
      throw MalformedInput("edge '" + e.id + "' has a non-numeric length");
    }
    eindex[e.id] = static_cast<int>(edges.size());
    edges.push_back(std::move(e));
  }
  const int base = vertex(field<std::string>(j, "basepoint"));
  const Json& mj = field<Json>(j, "marking");
  std::vector<EdgePath> marking;
  for (int i = 1; i <= rank; ++i) {
    const auto name = generator_name(i);
    if (!mj.contains(name)) throw MalformedInput("marking has no image for '" + name + "'");
    EdgePath path;
    for (const auto& tok : mj.at(name).get<std::vector<std::string>>()) {
      if (tok.size() < 2 || (tok.back() != '+' && tok.back() != '-')) {
        throw MalformedInput("bad oriented edge '" + tok + "'");
      }
      const auto it = eindex.find(tok.substr(0, tok.size() - 1));
      if (it == eindex.end()) throw MalformedInput("unknown edge in '" + tok + "'");
      path.push_back({it->second, tok.back() == '+'});
    }
    marking.push_back(std::move(path));
  }
  if (mj.size() != static_cast<std::size_t>(rank)) throw RankMismatch("marking size does not match rank");
  return MarkedGraph::build(rank, vertices, std::move(edges), base, std::move(marking));
}

// ---------------------------------------------------------------------------
// Files.

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedInput("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw MalformedInput("'" + path + "' is not valid JSON: " + e.what());
  }
}

inline void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw MalformedInput("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

inline MarkedGraph read_graph(const std::string& path) { return graph_from_json(read_json_file(path)); }
inline RationalCurrent read_current(const std::string& path, int rank_hint = 0) {
  return current_from_json(read_json_file(path), rank_hint);
}
inline Automorphism read_automorphism(const std::string& path) {
  return automorphism_from_json(read_json_file(path));
}

}  // namespace outerspace
