from rest_framework import serializers

from gf2m.serializers import FieldCtxSerializer, HexField
from trivariate.serializers import TripleField


class ParamReportSerializer(serializers.Serializer):
    a = HexField()
    family = serializers.CharField()
    roots = serializers.DictField(child=serializers.IntegerField())
    criterion_good = serializers.BooleanField()
    variants_consistent = serializers.BooleanField()
    is_permutation = serializers.BooleanField()
    is_apn = serializers.BooleanField()
    method = serializers.CharField()
    max_kernel = serializers.IntegerField(allow_null=True)
    diag = serializers.BooleanField()
    correlated = serializers.BooleanField()
    witness = TripleField(allow_null=True)


class ScanSummarySerializer(serializers.Serializer):
    field = FieldCtxSerializer()
    m = serializers.IntegerField()
    i = serializers.IntegerField()
    rows = ParamReportSerializer(many=True)
    correlated = serializers.IntegerField()
    total = serializers.IntegerField()
    correlation = serializers.CharField()
