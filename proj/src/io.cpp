#include "ncssa/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ncssa {

namespace {

template <class M>
const auto& lookup(const M& m, const std::string& name, const char* what) {
  auto it = m.find(name);
  if (it == m.end()) throw InputError(std::string("instance has no ") + what + " named '" + name + "'");
  return it->second;
}

void emit(const Json& j, int indent, int depth, std::string& out) {
  auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  // short numeric arrays (matrix entries) stay on one line
  auto flat = [](const Json& a) {
    for (const auto& e : a)
      if (e.is_structured()) return false;
    return true;
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += Json(it.key()).dump();
        out += indent < 0 ? ":" : ": ";
        emit(it.value(), indent, depth + 1, out);
      }
      newline(depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty() || flat(j)) {
        out += '[';
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += indent < 0 ? "," : ", ";
          emit(j[i], indent, depth + 1, out);
        }
        out += ']';
        return;
      }
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        newline(depth + 1);
        emit(j[i], indent, depth + 1, out);
      }
      newline(depth);
      out += ']';
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out += buf;
      // keep floats recognizable as floats
      if (std::string_view(buf).find_first_of(".eEn") == std::string_view::npos) out += ".0";
      return;
    }
    default:
      out += j.dump();
  }
}

Json algebra_to_json(const Algebra& a) {
  Json blocks = Json::array();
  for (const Block& b : a.blocks()) blocks.push_back({{"dim", b.dim}, {"weight", b.weight}});
  return {{"blocks", blocks}};
}

Algebra algebra_from_json(const Json& j, const std::string& field) {
  if (!j.is_object() || !j.contains("blocks") || !j["blocks"].is_array() || j["blocks"].empty())
    throw InputError(field + ": expected {\"blocks\": [...]}");
  std::vector<Block> blocks;
  for (std::size_t k = 0; k < j["blocks"].size(); ++k) {
    const Json& b = j["blocks"][k];
    const std::string f = field + ".blocks[" + std::to_string(k) + "]";
    if (!b.contains("dim") || !b["dim"].is_number_integer() || b["dim"].get<int>() < 1)
      throw InputError(f + ".dim: expected a positive integer");
    const double w = b.value("weight", 1.0);
    if (!(w > 0)) throw InputError(f + ".weight: expected a positive number");
    blocks.push_back({b["dim"].get<int>(), w});
  }
  return Algebra(std::move(blocks));
}

Json element_to_json(const std::string& alg, const AlgElement& x) {
  Json blocks = Json::array();
  for (const Mat& m : x.blocks()) blocks.push_back(matrix_to_json(m));
  return {{"algebra", alg}, {"blocks", blocks}};
}

}  // namespace

Json matrix_to_json(const Mat& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

Mat matrix_from_json(const Json& j, const std::string& field) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) throw InputError(field + ": expected an array of rows");
  const auto rows = static_cast<int>(j.size());
  const auto cols = static_cast<int>(j[0].size());
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (!j[i].is_array() || static_cast<int>(j[i].size()) != cols)
      throw InputError(field + "[" + std::to_string(i) + "]: ragged matrix row");
    for (int c = 0; c < cols; ++c) {
      const Json& e = j[i][c];
      if (e.is_number()) {
        m(i, c) = e.get<double>();
      } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
        m(i, c) = cplx(e[0].get<double>(), e[1].get<double>());
      } else {
        throw InputError(field + "[" + std::to_string(i) + "][" + std::to_string(c) + "]: expected [re, im]");
      }
    }
  }
  return m;
}

std::string dump_json(const Json& j, int indent) {
  std::string out;
  emit(j, indent, 0, out);
  return out;
}

const Channel& Instance::channel(const std::string& name) const { return lookup(channels, name, "channel"); }
const Inclusion& Instance::inclusion(const std::string& name) const { return lookup(inclusions, name, "inclusion"); }
const AlgElement& Instance::state(const std::string& name) const { return lookup(states, name, "state"); }
const Povm& Instance::povm(const std::string& name) const { return lookup(povms, name, "POVM"); }

Instance parse_instance(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw InputError("instance: expected a JSON object");
  if (j.value("schema_version", -1) != kSchemaVersion)
    throw InputError("schema_version: expected " + std::to_string(kSchemaVersion));

  Instance inst;
  inst.preset = j.value("preset", std::string());
  inst.seed = j.value("seed", std::uint64_t{0});
  if (j.contains("dims")) {
    if (!j["dims"].is_object()) throw InputError("dims: expected an object");
    for (auto it = j["dims"].begin(); it != j["dims"].end(); ++it) {
      if (!it.value().is_number_integer()) throw InputError("dims." + it.key() + ": expected an integer");
      inst.dims.emplace_back(it.key(), it.value().get<int>());
    }
  }

  std::map<std::string, Algebra> alg;
  if (!j.contains("algebras") || !j["algebras"].is_object()) throw InputError("algebras: expected an object");
  for (auto it = j["algebras"].begin(); it != j["algebras"].end(); ++it) {
    alg[it.key()] = algebra_from_json(it.value(), "algebras." + it.key());
    inst.algebras.emplace_back(it.key(), alg[it.key()]);
  }
  auto algebra_ref = [&](const Json& obj, const char* key, const std::string& field) -> const Algebra& {
    if (!obj.contains(key) || !obj[key].is_string()) throw InputError(field + "." + key + ": expected an algebra name");
    auto it = alg.find(obj[key].get<std::string>());
    if (it == alg.end()) throw InputError(field + "." + key + ": unknown algebra '" + obj[key].get<std::string>() + "'");
    return it->second;
  };
  auto wrap = [](const std::string& field, auto&& f) {
    try {
      return f();
    } catch (const InputError&) {
      throw;
    } catch (const Error& e) {
      throw InputError(field + ": " + e.what());
    }
  };

  if (j.contains("inclusions")) {
    for (auto it = j["inclusions"].begin(); it != j["inclusions"].end(); ++it) {
      const std::string f = "inclusions." + it.key();
      const Json& v = it.value();
      const Algebra& sub = algebra_ref(v, "sub", f);
      const Algebra& amb = algebra_ref(v, "ambient", f);
      if (!v.contains("embed")) throw InputError(f + ".embed: missing");
      const Mat c = matrix_from_json(v["embed"], f + ".embed");
      if (c.rows() != amb.total_dim() || c.cols() != sub.total_dim()) throw InputError(f + ".embed: wrong shape");
      inst.inclusions.emplace(it.key(), wrap(f, [&] { return Inclusion(Channel(sub, amb, c)); }));
    }
  }

  if (j.contains("channels")) {
    for (auto it = j["channels"].begin(); it != j["channels"].end(); ++it) {
      const std::string f = "channels." + it.key();
      const Json& v = it.value();
      const std::string kind = v.value("kind", std::string());
      if (kind == "coord") {
        const Algebra& in = algebra_ref(v, "input", f);
        const Algebra& out = algebra_ref(v, "output", f);
        const Mat c = matrix_from_json(v.value("coord", Json()), f + ".coord");
        if (c.rows() != out.total_dim() || c.cols() != in.total_dim()) throw InputError(f + ".coord: wrong shape");
        inst.channels.emplace(it.key(), Channel(in, out, c));
      } else if (kind == "kraus") {
        const Algebra& in = algebra_ref(v, "input", f);
        const Algebra& out = algebra_ref(v, "output", f);
        if (!in.is_full_block() || !out.is_full_block()) throw InputError(f + ": Kraus channels need full blocks");
        if (!v.contains("kraus") || !v["kraus"].is_array()) throw InputError(f + ".kraus: expected a list of matrices");
        std::vector<Mat> ks;
        for (std::size_t k = 0; k < v["kraus"].size(); ++k)
          ks.push_back(matrix_from_json(v["kraus"][k], f + ".kraus[" + std::to_string(k) + "]"));
        inst.channels.emplace(it.key(), wrap(f, [&] { return channel_from_kraus(ks, in.dim(0), out.dim(0)); }));
      } else if (kind == "povm") {
        const Algebra& in = algebra_ref(v, "input", f);
        if (!in.is_full_block()) throw InputError(f + ".input: POVMs act on a full block");
        if (!v.contains("effects") || !v["effects"].is_array()) throw InputError(f + ".effects: expected a list");
        Povm p{in.dim(0), {}};
        for (std::size_t k = 0; k < v["effects"].size(); ++k)
          p.effects.push_back(matrix_from_json(v["effects"][k], f + ".effects[" + std::to_string(k) + "]"));
        wrap(f, [&] {
          p.validate();
          return 0;
        });
        inst.channels.emplace(it.key(), povm_channel(p));
        inst.povms.emplace(it.key(), std::move(p));
      } else if (kind == "cond_exp") {
        const std::string inc = v.value("inclusion", std::string());
        auto ii = inst.inclusions.find(inc);
        if (ii == inst.inclusions.end()) throw InputError(f + ".inclusion: unknown inclusion '" + inc + "'");
        inst.channels.emplace(it.key(), ii->second.cond_exp());
      } else {
        throw InputError(f + ".kind: expected kraus, coord, povm or cond_exp");
      }
    }
  }

  if (j.contains("states")) {
    for (auto it = j["states"].begin(); it != j["states"].end(); ++it) {
      const std::string f = "states." + it.key();
      const Algebra& a = algebra_ref(it.value(), "algebra", f);
      const Json& bl = it.value().value("blocks", Json());
      if (!bl.is_array() || static_cast<int>(bl.size()) != a.num_blocks())
        throw InputError(f + ".blocks: expected one matrix per block");
      std::vector<Mat> blocks;
      for (int k = 0; k < a.num_blocks(); ++k) {
        blocks.push_back(matrix_from_json(bl[k], f + ".blocks[" + std::to_string(k) + "]"));
        if (blocks.back().rows() != a.dim(k) || blocks.back().cols() != a.dim(k))
          throw InputError(f + ".blocks[" + std::to_string(k) + "]: wrong shape");
      }
      inst.states.emplace(it.key(), AlgElement(a, std::move(blocks)));
    }
  }

  if (j.contains("expectation")) {
    const Json& e = j["expectation"];
    if (!e.contains("e_r")) throw InputError("expectation.e_r: missing");
    const Json& v = e["e_r"];
    const std::string inc = v.value("inclusion", std::string());
    auto ii = inst.inclusions.find(inc);
    if (ii == inst.inclusions.end()) throw InputError("expectation.e_r.inclusion: unknown inclusion '" + inc + "'");
    const Mat c = matrix_from_json(v.value("e_dag", Json()), "expectation.e_r.e_dag");
    const Algebra& b = ii->second.ambient();
    const Algebra& r = ii->second.sub();
    if (c.rows() != r.total_dim() || c.cols() != b.total_dim()) throw InputError("expectation.e_r.e_dag: wrong shape");
    inst.e_r = ConditionalExpectation{ii->second, Channel(b, r, c)};
  }
  return inst;
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str());
}

std::string serialize_instance(const Instance& inst) {
  std::vector<std::pair<std::string, Algebra>> names = inst.algebras;
  auto name_of = [&](const Algebra& a) {
    for (const auto& [n, b] : names)
      if (b == a) return n;
    names.emplace_back("alg" + std::to_string(names.size()), a);
    return names.back().first;
  };

  Json inclusions = Json::object();
  for (const auto& [n, inc] : inst.inclusions)
    inclusions[n] = {{"sub", name_of(inc.sub())}, {"ambient", name_of(inc.ambient())},
                     {"embed", matrix_to_json(inc.embed().coord())}};
  Json channels = Json::object();
  for (const auto& [n, ch] : inst.channels) {
    auto p = inst.povms.find(n);
    if (p != inst.povms.end()) {
      Json eff = Json::array();
      for (const Mat& e : p->second.effects) eff.push_back(matrix_to_json(e));
      channels[n] = {{"kind", "povm"}, {"input", name_of(ch.input())}, {"effects", eff}};
    } else {
      channels[n] = {{"kind", "coord"}, {"input", name_of(ch.input())}, {"output", name_of(ch.output())},
                     {"coord", matrix_to_json(ch.coord())}};
    }
  }
  Json states = Json::object();
  for (const auto& [n, s] : inst.states) states[n] = element_to_json(name_of(s.algebra()), s);
  Json expectation;
  if (inst.e_r) {
    std::string inc;
    for (const auto& [n, i] : inst.inclusions)
      if (i.embed().coord() == inst.e_r->r_inc.embed().coord() && i.ambient() == inst.e_r->r_inc.ambient()) inc = n;
    if (inc.empty()) throw Error("serialize_instance: the conditional expectation's inclusion is not registered");
    expectation = {{"e_r", {{"inclusion", inc}, {"e_dag", matrix_to_json(inst.e_r->e_dag.coord())}}}};
  }

  Json dims = Json::object();
  for (const auto& [k, v] : inst.dims) dims[k] = v;
  Json algebras = Json::object();
  for (const auto& [n, a] : names) algebras[n] = algebra_to_json(a);

  Json j;
  j["schema_version"] = kSchemaVersion;
  j["preset"] = inst.preset;
  j["seed"] = inst.seed;
  j["dims"] = dims;
  j["algebras"] = algebras;
  if (!inclusions.empty()) j["inclusions"] = inclusions;
  if (!channels.empty()) j["channels"] = channels;
  if (!states.empty()) j["states"] = states;
  if (inst.e_r) j["expectation"] = expectation;
  return dump_json(j) + "\n";
}

void save_instance(const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << serialize_instance(inst);
}

}  // namespace ncssa
