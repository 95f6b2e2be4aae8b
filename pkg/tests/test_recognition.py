"""Recognition engine, prime-set predicates, and certificate machinery."""

import json

import pytest

import oracles
from conftest import random_graph
from qpkit.canonical import canonical_key
from qpkit.families import FamilySpec, odd_cycle_family
from qpkit.graphs import (
    bit_members,
    complement,
    complete_graph,
    cycle_graph,
    empty_graph,
    from_edges,
    mask_of,
    parse_graph6,
    path_graph,
)
from qpkit.harness import enumerate_graphs
from qpkit.invariants import clique_number, chromatic_number
from qpkit.recognition import (
    InvalidCertificateError,
    MemoCapacityError,
    QpCertificate,
    RecognitionEngine,
    RecognitionLimitError,
    certificate_from_json,
    certificate_to_json,
    coloring_from_certificate,
    complement_certificate,
    is_prime_clique,
    is_prime_independent_set,
    is_quasiperfect,
    leaf_certificate,
    prime_cliques,
    prime_independent_sets,
    verify_certificate,
)


class TestPrimeSets:
    def test_k0(self):
        assert list(prime_independent_sets(empty_graph(0))) == [0]
        assert list(prime_cliques(empty_graph(0))) == [0]

    def test_kn_singletons(self):
        g = complete_graph(4)
        assert list(prime_independent_sets(g)) == [1 << v for v in range(4)]
        assert list(prime_cliques(g)) == [g.vertex_mask]

    def test_en_dual(self):
        g = empty_graph(4)
        assert list(prime_independent_sets(g)) == [g.vertex_mask]
        assert list(prime_cliques(g)) == [1 << v for v in range(4)]

    def test_c5_empty(self):
        g = cycle_graph(5)
        assert list(prime_independent_sets(g)) == []
        assert list(prime_cliques(g)) == []

    def test_family_one_wing(self):
        fg = odd_cycle_family(FamilySpec(5, (1,)))
        pis = [bit_members(m) for m in prime_independent_sets(fg.graph)]
        assert pis == [[0], [1], [5]]
        pks = [bit_members(m) for m in prime_cliques(fg.graph)]
        assert pks == [[2], [4], [5]]

    def test_oracle_sweep(self):
        for n in range(7):
            for g in enumerate_graphs(n):
                edges = oracles.graph_edges(g)
                want = {frozenset(s)
                        for s in oracles.oracle_prime_independent_sets(n, edges)}
                got = {frozenset(bit_members(m))
                       for m in prime_independent_sets(g)}
                assert got == want, edges
                want_k = {frozenset(s)
                          for s in oracles.oracle_prime_cliques(n, edges)}
                got_k = {frozenset(bit_members(m)) for m in prime_cliques(g)}
                assert got_k == want_k, edges

    def test_yield_order_sorted(self, rng):
        for _ in range(20):
            g = random_graph(rng, rng.randrange(1, 8))
            out = list(prime_independent_sets(g))
            keyed = [(m.bit_count(), bit_members(m)) for m in out]
            assert keyed == sorted(keyed)
            assert len(set(out)) == len(out)

    def test_predicates(self):
        fg = odd_cycle_family(FamilySpec(5, (1,)))
        g = fg.graph
        assert is_prime_independent_set(g, mask_of([0]))
        assert not is_prime_independent_set(g, mask_of([2]))  # misses the triangle
        assert not is_prime_independent_set(g, mask_of([0, 1]))  # not independent
        assert is_prime_clique(g, mask_of([2]))
        assert not is_prime_clique(g, mask_of([0, 1, 5]))  # cycle ends outside MIS
        with pytest.raises(ValueError):
            is_prime_independent_set(g, 1 << 10)


class TestRecognition:
    def test_k0_and_k1(self):
        assert is_quasiperfect(empty_graph(0)).quasiperfect
        assert is_quasiperfect(empty_graph(1)).quasiperfect

    def test_c5_pure_reject(self):
        out = is_quasiperfect(cycle_graph(5), mode="pure")
        assert not out.quasiperfect
        assert out.certificate is None

    def test_family_accept(self):
        fg = odd_cycle_family(FamilySpec(5, (1,)))
        out = is_quasiperfect(fg.graph)
        assert out.quasiperfect
        assert verify_certificate(fg.graph, out.certificate)

    def test_reference_oracle_agreement(self):
        for n in range(6):
            for g in enumerate_graphs(n):
                edges = oracles.graph_edges(g)
                want = oracles.oracle_quasiperfect(n, edges)
                assert is_quasiperfect(g, mode="pure").quasiperfect == want, edges

    def test_pure_equals_accelerated(self):
        pure = RecognitionEngine(mode="pure")
        fast = RecognitionEngine(mode="accelerated")
        for n in range(7):
            for g in enumerate_graphs(n):
                assert pure.is_quasiperfect(g) == fast.is_quasiperfect(g)

    def test_accelerated_certificates_verify(self):
        eng = RecognitionEngine(mode="accelerated")
        for n in range(7):
            for g in enumerate_graphs(n):
                out = eng.recognize(g)
                if out.quasiperfect:
                    assert verify_certificate(g, out.certificate)

    def test_perfect_shortcut_consistent(self):
        plain = RecognitionEngine(mode="accelerated")
        short = RecognitionEngine(mode="accelerated", perfect_shortcut=True)
        for n in range(6):
            for g in enumerate_graphs(n):
                assert plain.is_quasiperfect(g) == short.is_quasiperfect(g)
                out = short.recognize(g)
                if out.quasiperfect:
                    assert verify_certificate(g, out.certificate)

    def test_memo_reuse(self):
        eng = RecognitionEngine()
        g = odd_cycle_family(FamilySpec(5, (1, 2, 3))).graph
        eng.recognize(g)
        hits_before = eng.recognize(g).stats.memo_hits
        assert hits_before >= 1  # second call answers from the memo

    def test_limit(self):
        eng = RecognitionEngine(limit=5)
        with pytest.raises(RecognitionLimitError):
            eng.recognize(empty_graph(6))

    def test_memo_capacity(self):
        eng = RecognitionEngine(memo_capacity=1)
        with pytest.raises(MemoCapacityError):
            for n in range(5):
                for g in enumerate_graphs(n):
                    eng.recognize(g)

    def test_isomorphic_inputs_share_memo(self, rng):
        from qpkit.graphs import permute
        eng = RecognitionEngine()
        g = odd_cycle_family(FamilySpec(5, (1, 4))).graph
        out1 = eng.recognize(g)
        perm = list(range(g.n))
        rng.shuffle(perm)
        h = permute(g, perm)
        out2 = eng.recognize(h)
        assert out1.quasiperfect == out2.quasiperfect
        assert verify_certificate(h, out2.certificate)

    def test_disjunctive_no_certificates(self):
        eng = RecognitionEngine(reading="disjunctive")
        g = parse_graph6("ECpo")  # accepted under disjunctive only
        out = eng.recognize(g)
        assert out.quasiperfect
        assert out.certificate is None


class TestCertificates:
    def _family_cert(self):
        fg = odd_cycle_family(FamilySpec(5, (1,)))
        out = is_quasiperfect(fg.graph)
        return fg.graph, out.certificate

    def test_leaf(self):
        assert verify_certificate(empty_graph(0), leaf_certificate())

    def test_leaf_wrong_graph(self):
        chk = verify_certificate(complete_graph(1), leaf_certificate())
        assert not chk
        assert chk.reason == "leaf-for-nonempty-graph"

    def test_verify_rejects_tampered_pi(self):
        g, cert = self._family_cert()
        bad = QpCertificate(
            key=cert.key, pi=cert.pi | cert.pk, pk=cert.pk,
            pi_child=cert.pi_child, pk_child=cert.pk_child)
        chk = verify_certificate(g, bad)
        assert not chk
        assert chk.reason in ("pi-not-independent", "pi-misses-maximum-clique",
                              "pi-vertex-outside-maximum-cliques",
                              "key-mismatch")

    def test_verify_rejects_wrong_graph(self):
        g, cert = self._family_cert()
        chk = verify_certificate(cycle_graph(6), cert)
        assert not chk

    def test_verify_reports_deep_failures(self):
        g, cert = self._family_cert()
        # corrupt one level down
        bad_child = QpCertificate(
            key=cert.pi_child.key, pi=0, pk=cert.pi_child.pk,
            pi_child=cert.pi_child.pi_child, pk_child=cert.pi_child.pk_child,
            leaf=cert.pi_child.leaf)
        bad = QpCertificate(key=cert.key, pi=cert.pi, pk=cert.pk,
                            pi_child=bad_child, pk_child=cert.pk_child)
        chk = verify_certificate(g, bad)
        assert not chk
        assert chk.reason.startswith("pi-child:")

    def test_coloring_proper_with_omega_colors(self):
        eng = RecognitionEngine()
        for n in range(7):
            for g in enumerate_graphs(n):
                out = eng.recognize(g)
                if not out.quasiperfect:
                    continue
                coloring = coloring_from_certificate(g, out.certificate)
                assert set(coloring) == set(range(g.n))
                for u in range(g.n):
                    for v in range(u + 1, g.n):
                        if g.has_edge(u, v):
                            assert coloring[u] != coloring[v]
                if g.n:
                    used = len(set(coloring.values()))
                    assert used == clique_number(g) == chromatic_number(g)

    def test_coloring_rejects_invalid(self):
        g, cert = self._family_cert()
        with pytest.raises(InvalidCertificateError):
            coloring_from_certificate(cycle_graph(6), cert)

    def test_json_roundtrip(self):
        g, cert = self._family_cert()
        blob = certificate_to_json(g, cert)
        doc = json.loads(blob)
        assert doc["schema"] == "qpcert-v1"
        g2, cert2 = certificate_from_json(blob)
        assert g2 == g
        assert cert2 == cert
        assert verify_certificate(g2, cert2)

    def test_json_deterministic(self):
        g, cert = self._family_cert()
        assert certificate_to_json(g, cert) == certificate_to_json(g, cert)

    def test_json_rejects_garbage(self):
        with pytest.raises(InvalidCertificateError):
            certificate_from_json("{}")
        with pytest.raises(InvalidCertificateError):
            certificate_from_json(json.dumps({"schema": "nope"}))


class TestComplementDuality:
    def test_pi_of_g_is_pk_of_complement(self, rng):
        for _ in range(20):
            g = random_graph(rng, rng.randrange(1, 8))
            cg = complement(g)
            for pi in prime_independent_sets(g):
                assert is_prime_clique(cg, pi)

    def test_certificate_transposes(self):
        eng = RecognitionEngine(mode="pure")
        count = 0
        for n in range(6):
            for g in enumerate_graphs(n):
                out = eng.recognize(g)
                if not out.quasiperfect or n == 0:
                    continue
                cc = complement_certificate(out.certificate)
                chk = verify_certificate(complement(g), cc)
                assert chk, chk.reason
                count += 1
        assert count > 40

    def test_double_complement_is_identity(self):
        fg = odd_cycle_family(FamilySpec(5, (1, 3)))
        out = is_quasiperfect(fg.graph)
        cc = complement_certificate(complement_certificate(out.certificate))
        # keys are canonical, so a double transpose reproduces the original
        assert cc == out.certificate

    def test_leaf_self_dual(self):
        assert complement_certificate(leaf_certificate()) == leaf_certificate()


class TestEngineAgainstKnownGraphs:
    @pytest.mark.parametrize("builder,expected", [
        (lambda: complete_graph(6), True),
        (lambda: empty_graph(6), True),
        (lambda: path_graph(6), True),
        (lambda: cycle_graph(6), True),
        (lambda: cycle_graph(5), False),
        (lambda: from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
                                (0, 5), (1, 5), (2, 5), (3, 5), (4, 5)]),
         False),  # 5-wheel
    ])
    def test_verdicts(self, builder, expected):
        assert is_quasiperfect(builder()).quasiperfect == expected
