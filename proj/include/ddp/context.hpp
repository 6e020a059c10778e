#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ddp/attention.hpp"
#include "ddp/discourse_model.hpp"
#include "ddp/ilf.hpp"
#include "ddp/resolved.hpp"

namespace ddp {

class KnowledgeBase;

// What a lexical trigger presupposes about the discourse model.
enum class PresuppositionKind { Similarity, ReverseParallel };

// The L component: a declarative table from adverb triggers to the kind of
// presupposition they impose.
struct Lexicon {
  std::map<AdverbTrigger, PresuppositionKind> triggers;
  static Lexicon standard();
};

struct LfRegister {
  ResolvedLf resolved;
  SurfaceInfo surface;
};

// The context 6-tuple threaded through utterance transitions. Values are
// immutable snapshots: update() returns a new Context.
struct Context {
  std::optional<LfRegister> lf_register;            // phi
  DiscourseModel discourse_model;                   // D
  AttentionalState attention;                       // A
  std::map<std::string, EntityId> indexicals;       // I
  Lexicon lexicon;                                  // L
  std::shared_ptr<const KnowledgeBase> world_kb;    // K
  int utterance_index = 0;
};

Context init_context(std::shared_ptr<const KnowledgeBase> kb,
                     std::map<std::string, EntityId> indexicals = {});

// The per-utterance transition: extends D with the resolved content,
// replaces the LF register, recomputes salience, and updates the Center.
Context update(const Context& ctx, const ResolvedLf& resolved,
               const SurfaceInfo& surface);

// Accessible entities of the input context whose gender/number unify with
// each pronoun of the utterance. An empty set signals an unresolvable
// pronoun; it is not an error here.
std::map<std::string, std::vector<EntityId>> candidate_referents(
    const Ilf& ilf, const Context& ctx);

using Assignment = std::map<std::string, EntityId>;  // pronoun var -> entity

// Specializes an ILF under a pronoun assignment: substitutes entity
// constants, mints fresh entities for indefinites (and first-mention names
// and definites), anchors tense. nn atoms stay underspecified.
ResolvedLf specialize(const Ilf& ilf, const Assignment& assignment,
                      const Context& ctx);

// JSON dump of the fast-changing components, for --trace.
std::string dump_context_json(const Context& ctx);

}  // namespace ddp
