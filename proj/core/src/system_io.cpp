#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "coxkl/coxeter.hpp"
#include "coxkl/error.hpp"

namespace coxkl {

CoxeterMatrix parse_coxeter_matrix(std::string_view text)
{
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::Parse, e.what());
  }
  if (!doc.is_object() || !doc.contains("coxeter_matrix"))
    throw Error(Errc::Parse, "expected an object with a \"coxeter_matrix\" field");
  const auto& rows_json = doc["coxeter_matrix"];
  if (!rows_json.is_array())
    throw Error(Errc::Parse, "\"coxeter_matrix\" must be an array of rows");

  std::vector<std::vector<int>> rows;
  for (std::size_t r = 0; r < rows_json.size(); ++r) {
    const auto& row = rows_json[r];
    if (!row.is_array())
      throw Error(Errc::Parse, "row " + std::to_string(r + 1) + " is not an array");
    std::vector<int> values;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (!row[c].is_number_integer())
        throw Error(Errc::Parse, "row " + std::to_string(r + 1) + ", column " + std::to_string(c + 1) +
                                     ": entry is not an integer");
      values.push_back(row[c].get<int>());
    }
    rows.push_back(std::move(values));
  }
  if (doc.contains("rank")) {
    if (!doc["rank"].is_number_integer())
      throw Error(Errc::Parse, "\"rank\" must be an integer");
    if (doc["rank"].get<int>() != static_cast<int>(rows.size()))
      throw Error(Errc::MatrixShape, "\"rank\" is " + std::to_string(doc["rank"].get<int>()) + " but " +
                                         std::to_string(rows.size()) + " rows were given");
  }
  return CoxeterMatrix::from_rows(rows);
}

CoxeterMatrix load_coxeter_matrix(const std::string& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(Errc::Io, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_coxeter_matrix(buf.str());
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.detail());
  }
}

std::unique_ptr<CoxeterSystem> load_system(const std::string& path)
{
  return std::make_unique<CoxeterSystem>(load_coxeter_matrix(path),
                                         std::filesystem::path(path).stem().string());
}

} // namespace coxkl
