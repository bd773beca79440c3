from rest_framework import serializers

from gf2m.serializers import HexField


class MonomialMapSerializer(serializers.Serializer):
    perm = serializers.ListField(child=serializers.IntegerField())
    scalars = serializers.ListField(child=HexField())
    twists = serializers.ListField(child=serializers.IntegerField())


class DiagWitnessSerializer(serializers.Serializer):
    mu = HexField()
    nu = HexField()
    rho = HexField()
    l1 = HexField()
    l2 = HexField()
    l3 = HexField()


class DiagReportSerializer(serializers.Serializer):
    """{"family": "G", "a": "0x3", "criterion": true, "witness": {...}, "recipe": {...}}"""
    m = serializers.IntegerField()
    i = serializers.IntegerField()
    d0 = serializers.IntegerField()
    family = serializers.CharField()
    a = HexField()
    criterion = serializers.BooleanField()
    agree = serializers.BooleanField()
    witness = DiagWitnessSerializer(allow_null=True)
    recipe = DiagWitnessSerializer(allow_null=True)


class EquivReportSerializer(serializers.Serializer):
    m = serializers.IntegerField()
    i = serializers.IntegerField()
    a = HexField(allow_null=True)
    b = HexField(allow_null=True)
    families = serializers.ListField(child=serializers.CharField(allow_null=True))
    result = serializers.CharField()
    inner = MonomialMapSerializer(allow_null=True)
    outer = MonomialMapSerializer(allow_null=True)
    maps_searched = serializers.IntegerField()
    patterns_searched = serializers.IntegerField()
    patterns_surviving = serializers.IntegerField()
    scope = serializers.CharField()
    footnotes = serializers.ListField(child=serializers.CharField())
