#include "ipaal/lcqm.hpp"

#include <json.hpp>

#include <fstream>

namespace ipaal::lcqm {

using nlohmann::json;

static json matrix_triplets(const Matrix& M) {
  json entries = json::array();
  for (int i = 0; i < M.rows(); ++i)
    for (int j = 0; j < M.cols(); ++j)
      if (M(i, j) != 0.0) entries.push_back(json::array({i, j, M(i, j)}));
  return entries;
}

static Matrix matrix_from_triplets(const json& entries, int n) {
  Matrix M = Matrix::Zero(n, n);
  for (const auto& e : entries) M(e.at(0).get<int>(), e.at(1).get<int>()) = e.at(2).get<double>();
  return M;
}

static json vector_to_json(const Vector& v) {
  json arr = json::array();
  for (int i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

static Vector vector_from_json(const json& arr) {
  Vector v(static_cast<int>(arr.size()));
  for (int i = 0; i < v.size(); ++i) v[i] = arr.at(i).get<double>();
  return v;
}

std::string instance_to_json(const LcqmInstance& inst) {
  json j;
  j["format"] = "lcqm-instance";
  j["version"] = 1;
  j["l"] = inst.l;
  j["n"] = inst.n;
  j["seed"] = inst.seed;
  j["density"] = inst.density;
  j["L_target"] = inst.L_target;
  j["m_target"] = inst.m_target;
  j["alpha1"] = inst.alpha1;
  j["alpha2"] = inst.alpha2;
  auto pack = [](const std::vector<Matrix>& mats) {
    json arr = json::array();
    for (const auto& M : mats) arr.push_back(matrix_triplets(M));
    return arr;
  };
  j["A"] = pack(inst.A_mats);
  j["B"] = pack(inst.B_mats);
  j["C"] = pack(inst.C_mats);
  j["D"] = vector_to_json(inst.D);
  j["b"] = vector_to_json(inst.b);
  j["d"] = vector_to_json(inst.d);
  return j.dump(1);
}

LcqmInstance instance_from_json(const std::string& text) {
  const json j = json::parse(text);
  if (j.value("format", "") != "lcqm-instance")
    throw std::runtime_error("not an lcqm-instance document");
  LcqmInstance inst;
  inst.l = j.at("l").get<int>();
  inst.n = j.at("n").get<int>();
  inst.seed = j.at("seed").get<std::uint64_t>();
  inst.density = j.at("density").get<double>();
  inst.L_target = j.at("L_target").get<double>();
  inst.m_target = j.at("m_target").get<double>();
  inst.alpha1 = j.at("alpha1").get<double>();
  inst.alpha2 = j.at("alpha2").get<double>();
  auto unpack = [&](const json& arr) {
    std::vector<Matrix> mats;
    mats.reserve(arr.size());
    for (const auto& e : arr) mats.push_back(matrix_from_triplets(e, inst.n));
    return mats;
  };
  inst.A_mats = unpack(j.at("A"));
  inst.B_mats = unpack(j.at("B"));
  inst.C_mats = unpack(j.at("C"));
  inst.D = vector_from_json(j.at("D"));
  inst.b = vector_from_json(j.at("b"));
  inst.d = vector_from_json(j.at("d"));
  if (static_cast<int>(inst.A_mats.size()) != inst.l ||
      static_cast<int>(inst.C_mats.size()) != inst.l ||
      static_cast<int>(inst.B_mats.size()) != inst.n || inst.b.size() != inst.l ||
      inst.d.size() != inst.l || inst.D.size() != inst.n)
    throw std::runtime_error("lcqm-instance document has inconsistent dimensions");
  return inst;
}

void save_instance(const LcqmInstance& inst, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << instance_to_json(inst) << '\n';
}

LcqmInstance load_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return instance_from_json(text);
}

}  // namespace ipaal::lcqm
