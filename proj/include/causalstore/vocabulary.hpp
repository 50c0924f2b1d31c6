#pragma once

#include <string_view>

// IRIs of every vocabulary term the engine interprets.
namespace causalstore::vocab {

inline constexpr std::string_view kRdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kRdfs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view kOwl = "http://www.w3.org/2002/07/owl#";
inline constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema#";

// Namespace of the built-in causal ontology and of stored individuals.
inline constexpr std::string_view kCausal = "http://causalgraph.org/ontology/causalgraph#";
inline constexpr std::string_view kStore = "http://causalgraph.org/store/cg_store#";

inline constexpr std::string_view kRdfType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
inline constexpr std::string_view kRdfProperty = "http://www.w3.org/1999/02/22-rdf-syntax-ns#Property";
inline constexpr std::string_view kRdfsSubClassOf = "http://www.w3.org/2000/01/rdf-schema#subClassOf";
inline constexpr std::string_view kRdfsDomain = "http://www.w3.org/2000/01/rdf-schema#domain";
inline constexpr std::string_view kRdfsRange = "http://www.w3.org/2000/01/rdf-schema#range";
inline constexpr std::string_view kRdfsClass = "http://www.w3.org/2000/01/rdf-schema#Class";
inline constexpr std::string_view kRdfsComment = "http://www.w3.org/2000/01/rdf-schema#comment";
inline constexpr std::string_view kOwlClass = "http://www.w3.org/2002/07/owl#Class";
inline constexpr std::string_view kOwlObjectProperty = "http://www.w3.org/2002/07/owl#ObjectProperty";
inline constexpr std::string_view kOwlDatatypeProperty = "http://www.w3.org/2002/07/owl#DatatypeProperty";
inline constexpr std::string_view kOwlThing = "http://www.w3.org/2002/07/owl#Thing";

inline constexpr std::string_view kXsdString = "http://www.w3.org/2001/XMLSchema#string";
inline constexpr std::string_view kXsdDecimal = "http://www.w3.org/2001/XMLSchema#decimal";
inline constexpr std::string_view kXsdInteger = "http://www.w3.org/2001/XMLSchema#integer";
inline constexpr std::string_view kXsdBoolean = "http://www.w3.org/2001/XMLSchema#boolean";

inline constexpr std::string_view kCausalNode = "http://causalgraph.org/ontology/causalgraph#CausalNode";
inline constexpr std::string_view kCausalEdge = "http://causalgraph.org/ontology/causalgraph#CausalEdge";
inline constexpr std::string_view kCreator = "http://causalgraph.org/ontology/causalgraph#Creator";
inline constexpr std::string_view kState = "http://causalgraph.org/ontology/causalgraph#State";
inline constexpr std::string_view kEvent = "http://causalgraph.org/ontology/causalgraph#Event";
inline constexpr std::string_view kVariable = "http://causalgraph.org/ontology/causalgraph#Variable";

inline constexpr std::string_view kHasCause = "http://causalgraph.org/ontology/causalgraph#hasCause";
inline constexpr std::string_view kHasEffect = "http://causalgraph.org/ontology/causalgraph#hasEffect";
inline constexpr std::string_view kIsCausing = "http://causalgraph.org/ontology/causalgraph#isCausing";
inline constexpr std::string_view kIsAffectedBy = "http://causalgraph.org/ontology/causalgraph#isAffectedBy";
inline constexpr std::string_view kHasCreator = "http://causalgraph.org/ontology/causalgraph#hasCreator";
inline constexpr std::string_view kCreated = "http://causalgraph.org/ontology/causalgraph#created";
inline constexpr std::string_view kHasConfidence = "http://causalgraph.org/ontology/causalgraph#hasConfidence";
inline constexpr std::string_view kHasTimeLag = "http://causalgraph.org/ontology/causalgraph#hasTimeLag";

}  // namespace causalstore::vocab
