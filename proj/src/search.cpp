#include "ttlab/search.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "ttlab/errors.hpp"

namespace ttlab {

TrackIsomorphism identity_isomorphism(const TrainTrack& track) {
    TrackIsomorphism iso;
    for (int e = 0; e < static_cast<int>(track.edge_count()); ++e)
        iso.edge_map.push_back({e, false});
    for (int s = 0; s < static_cast<int>(track.switch_count()); ++s)
        iso.switch_map.push_back(s);
    return iso;
}

namespace {

LoopResult close_loop(const TrainTrack& seed, const SplitSequence& seq, const SplitResult& applied,
                      const TrackIsomorphism& iso) {
    LoopResult r;
    r.sequence = seq;
    r.identification = iso;
    r.self_map = compose(applied.morphism, isomorphism_morphism(seed, applied.track, iso));
    r.self_map.name = seq.empty() ? "id" : "loop(" + format_sequence(seq) + ")";
    r.certificate = certify(r.self_map);
    return r;
}

bool passes(const LoopResult& r, const SearchConfig& cfg) {
    if (cfg.require_fixed_point_free && !r.certificate.fixed_point_free)
        return false;
    if (cfg.require_irreducible && !r.certificate.irreducible)
        return false;
    return true;
}

struct Branch {
    std::vector<LoopResult> results;
    SearchStats stats;
};

class Walker {
public:
    Walker(const TrainTrack& seed, const SearchConfig& cfg, std::atomic<std::size_t>& nodes)
        : seed_(seed), cfg_(cfg), nodes_(nodes) {}

    void visit(const TrainTrack& track, SplitSequence& path, Branch& out) {
        const std::size_t seen = ++nodes_;
        if (cfg_.max_nodes && seen > cfg_.max_nodes)
            throw ResourceLimit("search visited more than " + std::to_string(cfg_.max_nodes) + " nodes");
        ++out.stats.nodes;
        const auto isos = isomorphisms(seed_, track, cfg_.match);
        if (!isos.empty()) {
            ++out.stats.loop_nodes;
            const auto applied = apply_sequence(seed_, path);
            for (const auto& iso : isos) {
                ++out.stats.identifications;
                auto r = close_loop(seed_, path, applied, iso);
                if (passes(r, cfg_)) {
                    ++out.stats.emitted;
                    out.results.push_back(std::move(r));
                }
            }
        }
        if (path.size() >= cfg_.max_depth)
            return;
        std::vector<SplitMove> moves;
        try {
            moves = legal_splits(track);
        } catch (const NoSplitAvailable&) {
            return;
        }
        for (const auto& mv : moves) {
            const auto next = apply_split(track, mv);
            path.push_back(mv);
            visit(next.track, path, out);
            path.pop_back();
        }
    }

private:
    const TrainTrack& seed_;
    const SearchConfig& cfg_;
    std::atomic<std::size_t>& nodes_;
};

} // namespace

SearchStats search_loops(const TrainTrack& seed, const SearchConfig& cfg,
                         const std::function<void(const LoopResult&)>& sink) {
    if (cfg.max_depth < 1)
        throw Error("search depth must be at least 1");
    require_valid(seed);
    const auto first = legal_splits(seed);
    std::vector<Branch> branches(first.size());
    std::atomic<std::size_t> next{0}, nodes{0};
    std::vector<std::exception_ptr> errors(first.size());

    auto work = [&] {
        Walker walker(seed, cfg, nodes);
        for (std::size_t b; (b = next++) < first.size();) {
            try {
                SplitSequence path{first[b]};
                walker.visit(apply_split(seed, first[b]).track, path, branches[b]);
            } catch (...) {
                errors[b] = std::current_exception();
            }
        }
    };
    std::size_t threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, std::max<std::size_t>(first.size(), 1));
    if (threads <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < threads; ++t)
            pool.emplace_back(work);
        for (auto& t : pool)
            t.join();
    }
    for (const auto& e : errors)
        if (e)
            std::rethrow_exception(e);

    SearchStats total;
    for (auto& b : branches) {
        total.nodes += b.stats.nodes;
        total.loop_nodes += b.stats.loop_nodes;
        total.identifications += b.stats.identifications;
        total.emitted += b.stats.emitted;
        for (const auto& r : b.results)
            sink(r);
    }
    total.exhausted = true;
    return total;
}

std::vector<LoopResult> search_loops(const TrainTrack& seed, const SearchConfig& cfg, SearchStats* stats) {
    std::vector<LoopResult> out;
    const auto s = search_loops(seed, cfg, [&](const LoopResult& r) { out.push_back(r); });
    if (stats)
        *stats = s;
    return out;
}

LoopResult replay(const TrainTrack& seed, const SplitSequence& sequence, const TrackIsomorphism& identification,
                  const MatchOptions& match) {
    const auto applied = apply_sequence(seed, sequence);
    const auto isos = isomorphisms(seed, applied.track, match);
    if (std::find(isos.begin(), isos.end(), identification) == isos.end())
        throw NotAnIdentification("the given bijection does not carry the seed onto the final track");
    return close_loop(seed, sequence, applied, identification);
}

} // namespace ttlab
