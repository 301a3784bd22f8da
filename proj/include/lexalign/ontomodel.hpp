#pragma once

// Ontologies loaded from a small N-Triples subset:
//
//   <iri> <iri> <iri> .
//   <iri> <iri> "literal" .        (optional @lang or ^^<datatype> suffix is dropped)
//
// Recognized predicates: rdf:type (owl:Class, owl:ObjectProperty,
// owl:DatatypeProperty, owl:NamedIndividual), rdfs:subClassOf, rdfs:domain,
// rdfs:range, rdfs:label. Anything else is counted as a warning.

#include <compare>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lexalign::onto {

enum class EntityKind { Class, ObjectProperty, DataProperty, Individual };

std::string_view kind_name(EntityKind k);

struct EntityId {
  std::string iri;
  EntityKind kind = EntityKind::Class;
  auto operator<=>(const EntityId&) const = default;
};

namespace vocab {
inline constexpr std::string_view kRdfType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
inline constexpr std::string_view kRdfsSubClassOf = "http://www.w3.org/2000/01/rdf-schema#subClassOf";
inline constexpr std::string_view kRdfsDomain = "http://www.w3.org/2000/01/rdf-schema#domain";
inline constexpr std::string_view kRdfsRange = "http://www.w3.org/2000/01/rdf-schema#range";
inline constexpr std::string_view kRdfsLabel = "http://www.w3.org/2000/01/rdf-schema#label";
inline constexpr std::string_view kOwlClass = "http://www.w3.org/2002/07/owl#Class";
inline constexpr std::string_view kOwlObjectProperty = "http://www.w3.org/2002/07/owl#ObjectProperty";
inline constexpr std::string_view kOwlDatatypeProperty = "http://www.w3.org/2002/07/owl#DatatypeProperty";
inline constexpr std::string_view kOwlNamedIndividual = "http://www.w3.org/2002/07/owl#NamedIndividual";
inline constexpr std::string_view kOwlThing = "http://www.w3.org/2002/07/owl#Thing";
}  // namespace vocab

class Ontology {
 public:
  /// Throws DataError (with line number) on malformed lines, subclass
  /// cycles, and domain/range statements about undeclared properties or
  /// naming undeclared classes.
  static Ontology parse(std::string_view text);
  static Ontology load(const std::filesystem::path& file);

  const std::vector<EntityId>& entities() const { return entities_; }
  std::vector<EntityId> entities(EntityKind kind) const;
  std::optional<EntityId> find(std::string_view iri) const;
  bool contains(const EntityId& e) const;

  /// rdfs:label, else the IRI text after the last '#' or '/'.
  /// Throws UnknownEntity.
  std::string display_name(const EntityId& e) const;
  std::optional<std::string> label(const EntityId& e) const;

  std::set<EntityId> direct_subclasses(const EntityId& c) const;
  std::set<EntityId> superclasses(const EntityId& c) const;
  /// Properties having `c` as domain or range.
  std::set<EntityId> properties_of(const EntityId& c) const;
  std::optional<EntityId> domain_of(const EntityId& property) const;
  /// Class range, or nullopt for datatype ranges and undeclared ranges.
  std::optional<EntityId> range_class(const EntityId& property) const;
  /// Raw range IRI (class or datatype).
  std::optional<std::string> range_iri(const EntityId& property) const;

  const std::set<std::pair<std::string, std::string>>& subclass_edges() const { return subclass_of_; }

  std::size_t warning_count() const { return warnings_.size(); }
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  void require(const EntityId& e) const;
  void require_class(const EntityId& c) const;

  std::vector<EntityId> entities_;  // sorted
  std::map<std::string, EntityKind, std::less<>> kinds_;
  std::map<std::string, std::string, std::less<>> labels_;
  std::set<std::pair<std::string, std::string>> subclass_of_;  // (sub, super)
  std::map<std::string, std::string, std::less<>> domain_;
  std::map<std::string, std::string, std::less<>> range_;
  std::vector<std::string> warnings_;
};

/// Text after the last '#' or '/', or the whole IRI when that is empty.
std::string local_name(std::string_view iri);

}  // namespace lexalign::onto
