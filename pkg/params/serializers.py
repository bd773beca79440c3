from rest_framework import serializers

from gf2m.serializers import HexField


class GoodSetReportSerializer(serializers.Serializer):
    m = serializers.IntegerField()
    i = serializers.IntegerField()
    d = serializers.IntegerField()
    method = serializers.CharField()
    count = serializers.IntegerField()
    a1_good = serializers.BooleanField()
    good = serializers.ListField(child=HexField())


class BoundValueSerializer(serializers.Serializer):
    value = serializers.SerializerMethodField(method_name='format_value')
    ceiling = serializers.IntegerField()
    vacuous = serializers.BooleanField()

    def format_value(self, obj):
        return str(obj)


class FiberStatsSerializer(serializers.Serializer):
    m = serializers.IntegerField()
    i = serializers.IntegerField()
    class_counts = serializers.SerializerMethodField()
    gamma_affine = serializers.IntegerField()
    collision_pairs = serializers.IntegerField(allow_null=True)
    gamma_direct = serializers.IntegerField(allow_null=True)
    gamma_diagonal = serializers.IntegerField(allow_null=True)
    c0 = serializers.IntegerField()
    partition_ok = serializers.BooleanField()
    counts_agree = serializers.BooleanField()
    lower_bound = BoundValueSerializer()

    def get_class_counts(self, obj):
        return {str(k): n for k, n in obj.class_counts.items()}
