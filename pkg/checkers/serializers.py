from rest_framework import serializers

from gf2m.serializers import HexField
from trivariate.serializers import TripleField


class StatusReportSerializer(serializers.Serializer):
    a = HexField()
    family = serializers.CharField()
    is_permutation = serializers.BooleanField()
    is_apn = serializers.BooleanField()
    method = serializers.CharField()
    perm_method = serializers.CharField()
    max_kernel = serializers.IntegerField(allow_null=True)
    elapsed_ms = serializers.FloatField()
    witness = TripleField(allow_null=True)


# CSV column order for StatusReport rows
STATUS_CSV_FIELDS = ('a_hex', 'family', 'is_perm', 'is_apn', 'method', 'max_kernel', 'elapsed_ms')


def status_csv_row(report):
    return {
        'a_hex': hex(report.a),
        'family': report.family,
        'is_perm': int(report.is_permutation),
        'is_apn': int(report.is_apn),
        'method': report.method,
        'max_kernel': '' if report.max_kernel is None else report.max_kernel,
        'elapsed_ms': f'{report.elapsed_ms:.1f}',
    }
