import pytest
from hypothesis import given
from hypothesis import strategies as st

from termcoder import DictionaryTrie, Term, child_lookup, children_tokens

from helpers import heart_trie


class TestInsert:
    def test_insert_creates_path_with_terminal(self):
        trie = heart_trie()
        node = trie.lookup_path(("insuffisance", "cardiaque", "aigue"))
        assert node is not None
        assert node.terminal.code == "I509"

    def test_terminal_node_can_have_children(self):
        trie = heart_trie()
        node = trie.lookup_path(("insuffisance", "cardiaque"))
        assert node.terminal is not None
        assert "aigue" in node.children

    def test_empty_token_list_rejected(self):
        trie = DictionaryTrie()
        with pytest.raises(ValueError, match="no tokens"):
            trie.insert_term(Term((), "", "X00"))

    def test_empty_code_rejected(self):
        trie = DictionaryTrie()
        with pytest.raises(ValueError, match="empty code"):
            trie.insert_term(Term(("avc",), "avc", ""))

    def test_reinsert_same_path_overwrites_terminal(self):
        trie = DictionaryTrie()
        trie.insert_term(Term(("avc",), "avc", "I64"))
        trie.insert_term(Term(("avc",), "AVC", "I640"))
        assert trie.term_count == 1
        assert trie.root.children["avc"].terminal.code == "I640"

    def test_insert_after_freeze_fails(self):
        trie = heart_trie()
        with pytest.raises(ValueError, match="frozen"):
            trie.insert_term(Term(("x",), "x", "X00"))


class TestLookups:
    def test_child_lookup_depends_on_position(self):
        trie = heart_trie()
        assert child_lookup(trie.root, "cardiaque") is None
        node = child_lookup(trie.root, "insuffisance")
        assert child_lookup(node, "cardiaque") is not None

    def test_child_lookup_empty_token(self):
        assert child_lookup(heart_trie().root, "") is None

    def test_children_tokens(self):
        trie = heart_trie()
        assert children_tokens(trie.root) == {"insuffisance"}
        node = trie.root.children["insuffisance"]
        assert children_tokens(node) == {"cardiaque", "respiratoire"}
        leaf = trie.lookup_path(("insuffisance", "cardiaque", "aigue"))
        assert children_tokens(leaf) == set()


class TestCounts:
    def test_term_and_code_counts(self):
        trie = heart_trie()
        assert trie.term_count == 5
        assert trie.code_count() == 5

    def test_prefix_sharing_node_count(self):
        trie = DictionaryTrie()
        trie.insert_term(Term(("a", "b"), "a b", "C1"))
        trie.insert_term(Term(("a", "c"), "a c", "C2"))
        assert sum(1 for _ in trie.iter_nodes()) == 4  # root, a, b, c


token = st.text(alphabet="abcdef", min_size=1, max_size=5)
paths = st.lists(token, min_size=1, max_size=4).map(tuple)


@given(st.dictionaries(paths, st.text(alphabet="ABC0123456789", min_size=1, max_size=4), max_size=25))
def test_round_trip_random_term_sets(entries):
    trie = DictionaryTrie()
    for path, code in entries.items():
        trie.insert_term(Term(path, " ".join(path), code))
    trie.freeze()
    assert trie.term_count == len(entries)
    for path, code in entries.items():
        node = trie.lookup_path(path)
        assert node.terminal == Term(path, " ".join(path), code)


@given(st.sets(paths, max_size=25))
def test_node_count_equals_distinct_prefixes_plus_root(term_paths):
    trie = DictionaryTrie()
    for path in term_paths:
        trie.insert_term(Term(path, " ".join(path), "C0"))
    prefixes = {path[:i] for path in term_paths for i in range(1, len(path) + 1)}
    assert sum(1 for _ in trie.iter_nodes()) == len(prefixes) + 1
