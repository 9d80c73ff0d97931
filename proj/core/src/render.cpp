#include "incgram/render.hpp"

#include <map>
#include <sstream>

#include "incgram/error.hpp"

namespace incgram {

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string render_cfg(const GrammarSpec& g, const ParseState& p) {
  const auto& sig = g.signature();
  std::ostringstream out;
  out << "digraph parse {\n  node [shape=plaintext];\n";
  auto nodes = p.nodes();
  std::map<const Node*, std::size_t> index;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    index[nodes[k]] = k;
    const Generator& gen = sig.arrow(nodes[k]->generator);
    out << "  g" << k << " [label=" << quoted(sig.object_name(gen.cod.front()))
        << ", tooltip=" << quoted(gen.name) << "];\n";
  }
  for (std::size_t i = 0; i < p.prefix().size(); ++i) {
    out << "  w" << i << " [label=" << quoted(sig.object_name(p.prefix()[i]))
        << ", shape=box];\n";
  }
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    for (const Wire& w : nodes[k]->inputs) {
      out << "  g" << k << " -> ";
      if (w.is_boundary()) out << "w" << w.port;
      else out << "g" << index.at(w.source.get());
      out << ";\n";
    }
  }
  out << "  { rank=same;";
  for (std::size_t i = 0; i < p.prefix().size(); ++i) out << " w" << i << ";";
  out << " }\n}\n";
  return out.str();
}

std::string render_pregroup(const GrammarSpec& g, const ParseState& p) {
  const auto& sig = g.signature();
  std::map<const Node*, std::uint32_t> word_of;
  std::vector<const Node*> lexical(p.prefix().size(), nullptr);
  auto nodes = p.nodes();
  for (const Node* n : nodes) {
    if (sig.arrow(n->generator).kind == GeneratorKind::lexical) {
      std::uint32_t w = n->inputs.front().port;
      word_of[n] = w;
      lexical.at(w) = n;
    }
  }
  auto owner = [&](const Wire& w) { return w.is_boundary() ? w.port : word_of.at(w.source.get()); };

  std::ostringstream out;
  out << "digraph parse {\n  node [shape=box];\n";
  for (std::size_t i = 0; i < p.prefix().size(); ++i) {
    std::string label = sig.object_name(p.prefix()[i]);
    if (lexical[i]) {
      label += "\\n";
      const auto& cod = sig.arrow(lexical[i]->generator).cod;
      for (std::size_t t = 0; t < cod.size(); ++t) {
        if (t) label += ' ';
        label += sig.object_name(cod[t]);
      }
    }
    out << "  w" << i << " [label=\"" << label << "\"];\n";
  }
  for (std::size_t k = 0; k < p.wires().size(); ++k) {
    out << "  o" << k << " [label=" << quoted(sig.object_name(p.wires()[k].object))
        << ", shape=plaintext];\n";
  }
  for (const Node* n : nodes) {
    const Generator& gen = sig.arrow(n->generator);
    if (gen.kind != GeneratorKind::cup) continue;
    const Wire& l = n->inputs[0];
    const Wire& r = n->inputs[1];
    out << "  w" << owner(l) << " -> w" << owner(r) << " [label=\"cup\", dir=none, tooltip="
        << quoted(sig.object_name(l.object) + " " + sig.object_name(r.object)) << "];\n";
  }
  for (std::size_t k = 0; k < p.wires().size(); ++k) {
    out << "  w" << owner(p.wires()[k]) << " -> o" << k << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace

std::string render_dot(const GrammarSpec& g, const ParseState& p) {
  return g.mode() == GrammarMode::cfg ? render_cfg(g, p) : render_pregroup(g, p);
}

}  // namespace incgram
