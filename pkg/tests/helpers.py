"""Shared fixtures and reference implementations for the test suite."""

from termcoder import DictionaryTrie, NormalizationConfig, Term

# Synthetic dictionaries use short tokens; keep stopword removal out of the way.
NO_STOPWORDS = NormalizationConfig(stopwords=frozenset())

HEART_TERMS = {
    "insuffisance cardiaque": "I50",
    "insuffisance cardiaque aigue": "I509",
    "insuffisance cardiaque congestive": "I500",
    "insuffisance respiratoire": "J969",
    "insuffisance respiratoire aigue": "J960",
}

COMPOSED_TERMS = {
    "meningoencephalite": "G049",
    "meningo encephalite virale": "A861",
}


def build_trie(entries: dict[str, str]) -> DictionaryTrie:
    """Build a frozen trie from {space-joined tokens: code}."""
    trie = DictionaryTrie()
    for label, code in entries.items():
        trie.insert_term(Term(tuple(label.split()), label, code))
    return trie.freeze()


def heart_trie() -> DictionaryTrie:
    return build_trie(HEART_TERMS)


def composed_trie() -> DictionaryTrie:
    return build_trie(COMPOSED_TERMS)


def leftmost_longest_windows(term_paths, tokens):
    """Reference matcher: exact token-window membership, greedy leftmost-longest.

    Returns (start_token, end_token, window) triples. Independent of the trie
    engine on purpose; used to cross-check annotate_line.
    """
    paths = set(term_paths)
    hits = []
    n = len(tokens)
    longest = max((len(p) for p in paths), default=0)
    i = 0
    while i < n:
        for length in range(min(longest, n - i), 0, -1):
            window = tuple(tokens[i : i + length])
            if window in paths:
                hits.append((i, i + length - 1, window))
                i += length
                break
        else:
            i += 1
    return hits


def edit_distance_reference(a: str, b: str) -> int:
    """Textbook full-matrix edit distance, kept independent of the library."""
    rows, cols = len(a) + 1, len(b) + 1
    dist = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        dist[i][0] = i
    for j in range(cols):
        dist[0][j] = j
    for i in range(1, rows):
        for j in range(1, cols):
            cost = 0 if a[i - 1] == b[j - 1] else 1
            dist[i][j] = min(
                dist[i - 1][j] + 1,
                dist[i][j - 1] + 1,
                dist[i - 1][j - 1] + cost,
            )
    return dist[-1][-1]
