#include "artssl/artmap.hpp"

namespace artssl {

ArtmapModel::ArtmapModel(std::size_t dim, ArtParams params, MapFieldParams map_params,
                         std::size_t search_depth)
    : dim_(dim),
      map_params_(map_params),
      art_a_(dim, params),
      class_art_(params.alpha),
      search_depth_(search_depth) {
  map_params_.validate();
}

void ArtmapModel::pretrain(std::span<const double> x) {
  Vec A = complement_code(x);
  std::size_t before = art_a_.committed_count();
  art_a_.learn(A);
  stage1_nodes_ += art_a_.committed_count() - before;
  map_.ensure_nodes(art_a_.committed_count());  // new nodes start unlinked
}

std::size_t ArtmapModel::train(std::span<const double> x, int class_id) {
  Vec A = complement_code(x);
  std::size_t K = class_art_.learn(class_id);
  std::size_t n_b = class_art_.class_count();
  map_.ensure_nodes(art_a_.committed_count());

  double rho_t = art_a_.params().rho;  // baseline; raised transiently below
  std::vector<bool> deactivated;
  std::size_t winner;
  for (;;) {
    auto r = art_a_.search(A, rho_t, deactivated);
    if (!r) {
      // Match tracking pushed vigilance past every node, the all-ones
      // uncommitted one included. The sample still has to be stored.
      winner = art_a_.uncommitted_index();
      break;
    }
    if (r->index == art_a_.uncommitted_index() ||
        map_.accepts(r->index, K, n_b, map_params_.rho_ab)) {
      winner = r->index;
      break;
    }
    // Map-field reject: disable the winner and require a strictly better
    // match from here on. The raise is transient — the stored vigilance is
    // untouched and the next sample starts from the baseline again.
    deactivated[r->index] = true;
    rho_t = match_track(A, art_a_.weight(r->index), map_params_.delta);
  }

  std::size_t j = art_a_.absorb(winner, A);
  map_.ensure_nodes(art_a_.committed_count());
  if (!map_.link(j)) map_.set_link(j, K);
  return j;
}

std::optional<int> ArtmapModel::predict(std::span<const double> x, std::size_t T) const {
  if (map_.linked_count() == 0)
    throw DataError("model has no class links; supervised training required before predict");
  Vec A = complement_code(x);
  auto order = ranked_committed(art_a_, A);
  std::size_t depth = (T == 0 || T > order.size()) ? order.size() : T;
  for (std::size_t i = 0; i < depth; ++i) {
    if (auto l = map_.link(order[i])) return class_art_.class_of(*l);
  }
  return std::nullopt;
}

void ArtmapModel::restore_node(Vec weight, std::optional<int> class_id) {
  art_a_.restore_committed(std::move(weight));
  std::size_t j = art_a_.committed_count() - 1;
  map_.ensure_nodes(art_a_.committed_count());
  if (class_id) {
    auto k = class_art_.node_of(*class_id);
    if (!k) throw DataError("linked class id missing from the class dictionary");
    map_.set_link(j, *k);
  }
}

}  // namespace artssl
