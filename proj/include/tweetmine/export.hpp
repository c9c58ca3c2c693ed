#pragma once

#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace tweetmine {

// Attribute-annotated graph ready for serialization. Attribute values are
// preformatted strings so output bytes depend only on the producer.
struct ExportGraph {
  struct Key {
    std::string name;
    std::string type;  // GraphML attr.type: string, int, long, double
  };
  struct Node {
    std::string id;
    std::map<std::string, std::string> attrs;
  };
  struct Edge {
    std::string source;
    std::string target;
    std::map<std::string, std::string> attrs;
  };

  std::string name = "G";
  std::vector<Key> node_keys;
  std::vector<Key> edge_keys;
  std::vector<Node> nodes;
  std::vector<Edge> edges;
};

namespace detail {

inline std::string xml_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  out += '"';
  return out;
}

inline void write_dot_attrs(std::ostream& out, const std::map<std::string, std::string>& attrs) {
  if (attrs.empty()) return;
  out << " [";
  bool first = true;
  for (const auto& [k, v] : attrs) {
    if (!first) out << ", ";
    out << k << '=' << dot_quote(v);
    first = false;
  }
  out << ']';
}

}  // namespace detail

inline void write_dot(std::ostream& out, const ExportGraph& g) {
  out << "graph " << detail::dot_quote(g.name) << " {\n";
  for (const auto& n : g.nodes) {
    out << "  " << detail::dot_quote(n.id);
    detail::write_dot_attrs(out, n.attrs);
    out << ";\n";
  }
  for (const auto& e : g.edges) {
    out << "  " << detail::dot_quote(e.source) << " -- " << detail::dot_quote(e.target);
    detail::write_dot_attrs(out, e.attrs);
    out << ";\n";
  }
  out << "}\n";
}

inline void write_graphml(std::ostream& out, const ExportGraph& g) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\" "
         "xmlns:xsi=\"http://www.w3.org/2001/XMLSchema-instance\" "
         "xsi:schemaLocation=\"http://graphml.graphdrawing.org/xmlns "
         "http://graphml.graphdrawing.org/xmlns/1.0/graphml.xsd\">\n";
  for (const auto& k : g.node_keys)
    out << "  <key id=\"n_" << detail::xml_escape(k.name) << "\" for=\"node\" attr.name=\""
        << detail::xml_escape(k.name) << "\" attr.type=\"" << k.type << "\"/>\n";
  for (const auto& k : g.edge_keys)
    out << "  <key id=\"e_" << detail::xml_escape(k.name) << "\" for=\"edge\" attr.name=\""
        << detail::xml_escape(k.name) << "\" attr.type=\"" << k.type << "\"/>\n";
  out << "  <graph id=\"" << detail::xml_escape(g.name) << "\" edgedefault=\"undirected\">\n";
  for (const auto& n : g.nodes) {
    out << "    <node id=\"" << detail::xml_escape(n.id) << "\"";
    if (n.attrs.empty()) {
      out << "/>\n";
      continue;
    }
    out << ">\n";
    for (const auto& [k, v] : n.attrs)
      out << "      <data key=\"n_" << detail::xml_escape(k) << "\">" << detail::xml_escape(v) << "</data>\n";
    out << "    </node>\n";
  }
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const auto& e = g.edges[i];
    out << "    <edge id=\"e" << i << "\" source=\"" << detail::xml_escape(e.source) << "\" target=\""
        << detail::xml_escape(e.target) << "\"";
    if (e.attrs.empty()) {
      out << "/>\n";
      continue;
    }
    out << ">\n";
    for (const auto& [k, v] : e.attrs)
      out << "      <data key=\"e_" << detail::xml_escape(k) << "\">" << detail::xml_escape(v) << "</data>\n";
    out << "    </edge>\n";
  }
  out << "  </graph>\n</graphml>\n";
}

}  // namespace tweetmine
