#include "amplex/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "amplex/error.hpp"

namespace amplex::io {

namespace {

std::vector<std::vector<Vertex>> sorted_maximal(const SimplicialComplex& x) {
  std::vector<std::vector<Vertex>> out;
  for (const auto& s : x.maximal_simplexes()) out.push_back(s.as_vector());
  std::sort(out.begin(), out.end());
  return out;
}

SimplicialComplex checked(std::size_t declared, std::vector<std::vector<Vertex>> maximal) {
  auto x = SimplicialComplex::from_maximal(maximal);
  if (x.vertex_count() != declared)
    throw Error(ErrorKind::MalformedInput,
                "declared " + std::to_string(declared) + " vertices but simplexes use " +
                    std::to_string(x.vertex_count()));
  return x;
}

Vertex parse_vertex(std::string_view tok) {
  Vertex v{};
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size())
    throw Error(ErrorKind::MalformedInput, "bad vertex id '" + std::string(tok) + "'");
  return v;
}

}  // namespace

std::string to_text(const SimplicialComplex& x) {
  std::ostringstream os;
  os << "vertices " << x.vertex_count() << '\n';
  for (const auto& m : sorted_maximal(x)) {
    for (std::size_t i = 0; i < m.size(); ++i) os << (i ? " " : "") << m[i];
    os << '\n';
  }
  return os.str();
}

SimplicialComplex from_text(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string line;
  if (!std::getline(is, line)) throw Error(ErrorKind::MalformedInput, "empty complex file");
  std::istringstream head(line);
  std::string word;
  long long n = -1;
  if (!(head >> word >> n) || word != "vertices" || n < 0)
    throw Error(ErrorKind::MalformedInput, "expected 'vertices <n>' header");
  std::vector<std::vector<Vertex>> maximal;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::vector<Vertex> simplex;
    std::string tok;
    while (ls >> tok) simplex.push_back(parse_vertex(tok));
    if (!simplex.empty()) maximal.push_back(std::move(simplex));
  }
  return checked(static_cast<std::size_t>(n), std::move(maximal));
}

std::string to_structured(const SimplicialComplex& x) {
  nlohmann::json j;
  j["vertices"] = x.vertex_count();
  j["maximal_simplices"] = sorted_maximal(x);
  return j.dump() + "\n";
}

SimplicialComplex from_structured(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::MalformedInput, std::string("bad structured complex: ") + e.what());
  }
  if (!j.is_object() || !j.contains("vertices") || !j.contains("maximal_simplices"))
    throw Error(ErrorKind::MalformedInput, "structured complex needs 'vertices' and 'maximal_simplices'");
  try {
    const auto n = j.at("vertices").get<std::size_t>();
    auto maximal = j.at("maximal_simplices").get<std::vector<std::vector<Vertex>>>();
    return checked(n, std::move(maximal));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::MalformedInput, std::string("bad structured complex: ") + e.what());
  }
}

std::string write(const SimplicialComplex& x, Format f) {
  return f == Format::Text ? to_text(x) : to_structured(x);
}

SimplicialComplex read(std::string_view text) {
  const auto pos = text.find_first_not_of(" \t\r\n");
  if (pos != std::string_view::npos && text[pos] == '{') return from_structured(text);
  return from_text(text);
}

SimplicialComplex read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return read(ss.str());
}

void write_file(const std::string& path, const SimplicialComplex& x, Format f) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::InvalidInput, "cannot write '" + path + "'");
  out << write(x, f);
}

Format parse_format(std::string_view name) {
  if (name == "text") return Format::Text;
  if (name == "structured" || name == "json") return Format::Structured;
  throw Error(ErrorKind::InvalidParameters, "unknown format '" + std::string(name) + "'");
}

}  // namespace amplex::io
