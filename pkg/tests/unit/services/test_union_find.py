from app.services.union_find import UnionFind


class TestUnionFind:

    def test_singletons(self):
        assert UnionFind(3).classes() == [[0], [1], [2]]

    def test_unite(self):
        union_find = UnionFind(5)
        assert union_find.unite(3, 1)
        assert union_find.unite(4, 3)
        assert not union_find.unite(1, 4)
        assert union_find.find(4) == union_find.find(1)
        assert union_find.classes() == [[0], [1, 3, 4], [2]]

    def test_long_chain(self):
        union_find = UnionFind(1000)
        for element in range(999):
            union_find.unite(element, element + 1)
        assert len(union_find.classes()) == 1
        assert union_find.find(0) == union_find.find(999)
