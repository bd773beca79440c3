from rest_framework import serializers

from gf2m.serializers import HexField


class RootReportSerializer(serializers.Serializer):
    """{"variant": "Q", "a": "0x3", "roots": ["0x5"], "count": 1}"""
    variant = serializers.SerializerMethodField()
    a = HexField()
    roots = serializers.ListField(child=HexField())
    count = serializers.IntegerField()

    def get_variant(self, obj):
        return obj.variant.value


class MatrixReportSerializer(serializers.Serializer):
    m = serializers.IntegerField()
    i = serializers.IntegerField()
    a = HexField()
    singular = serializers.BooleanField()
    kernel_dim = serializers.IntegerField()
    q_roots = serializers.IntegerField()
    agree = serializers.BooleanField()
