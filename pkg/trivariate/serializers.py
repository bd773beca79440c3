from rest_framework import serializers

from gf2m.serializers import HexField


class TripleField(serializers.Field):
    """Triple as a list of three hex elements"""

    def to_representation(self, value):
        return [hex(int(c)) for c in value]

    def to_internal_value(self, data):
        from .quadform import Triple

        if not isinstance(data, (list, tuple)) or len(data) != 3:
            raise serializers.ValidationError('expected three hex elements')
        try:
            return Triple(*(int(c, 16) for c in data))
        except (TypeError, ValueError):
            raise serializers.ValidationError(f'{data!r} is not a triple of hex elements')


class KernelProfileSerializer(serializers.Serializer):
    direction = TripleField()
    direction_type = serializers.SerializerMethodField()
    kernel_size = serializers.IntegerField()
    predicted = serializers.IntegerField()
    exact = serializers.BooleanField()
    consistent = serializers.BooleanField()
    h_zero = serializers.BooleanField(allow_null=True)

    def get_direction_type(self, obj):
        return obj.direction_type.value


class TypeTallySerializer(serializers.Serializer):
    total = serializers.IntegerField()
    exact_match = serializers.IntegerField()
    mismatches = serializers.IntegerField()
    bound_met = serializers.IntegerField()
    bound_missed = serializers.IntegerField()
    h_zero = serializers.IntegerField()
    max_kernel = serializers.IntegerField()


class DirectionSummarySerializer(serializers.Serializer):
    a = HexField()
    consistent = serializers.BooleanField()
    tallies = serializers.SerializerMethodField()
    first_mismatch = KernelProfileSerializer(allow_null=True)

    def get_tallies(self, obj):
        return {
            kind.value: TypeTallySerializer(tally).data
            for kind, tally in obj.tallies.items()
        }
